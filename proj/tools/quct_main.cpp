/**
 * quct: command-line front end for quadratic unitary Cayley graphs of finite
 * commutative rings. Subcommands: report, survey, verify.
 *
 * Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 ring class
 * without closed forms, 4 size cap exceeded.
 */

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "quct/json_io.hpp"
#include "quct/quct.hpp"

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitCap = 4;

std::uint64_t default_cap() {
    if (const char* env = std::getenv("QUCT_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return quct::kDefaultCap;
}

struct Options {
    std::string spec;
    std::string method = "both";
    std::string format = "table";
    unsigned k_max = 4;
    std::uint64_t cap = default_cap();
    std::uint64_t max_order = 0;
    std::string out;
};

void emit(const std::string& text, const Options& opt) {
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out);
        f << text;
    }
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

std::string render_match(const quct::MatchReport& m) {
    return m.method + " max_dev=" + format_double(m.max_dev) + (m.pass ? " pass" : " FAIL");
}

std::string report_table(const quct::InvariantReport& rep, const quct::Spectrum& spec) {
    std::ostringstream os;
    os << "ring              : " << rep.ring << "\n";
    os << "order             : " << rep.order << "\n";
    os << "classification    : " << rep.classification << "\n";
    os << "degree            : " << rep.degree << "\n";
    os << "spectrum          :\n";
    for (const auto& e : spec.entries()) {
        os << "  " << e.value.str() << "  ~" << format_double(e.value.approx_value()) << "  x"
           << e.multiplicity << "\n";
    }
    os << "energy            : " << rep.energy.str() << " (approx " << format_double(rep.energy_approx)
       << ")\n";
    os << "hyperenergetic    : computed=" << yesno(rep.hyperenergetic.computed)
       << " classifier=" << yesno(rep.hyperenergetic.classifier) << "\n";
    os << "moments s1..s" << rep.moments.size() << "   :";
    for (const auto& m : rep.moments) os << " " << m.get_str();
    os << "\n";
    os << "triangles         : " << rep.triangles.get_str() << "\n";
    os << "ramanujan         : computed=" << yesno(rep.ramanujan.computed)
       << " classifier=" << yesno(rep.ramanujan.classifier) << "\n";
    if (rep.tensor_decomposable) {
        os << "tensor-decomposes : " << yesno(*rep.tensor_decomposable) << "\n";
    }
    if (rep.diameter) {
        os << "diameter          : " << *rep.diameter << "\n";
    } else if (rep.diameter_infinite) {
        os << "diameter          : INFINITE\n";
    }
    if (rep.sources.character && rep.sources.jacobi) {
        os << "oracle match      : " << render_match(*rep.sources.character) << "; "
           << render_match(*rep.sources.jacobi) << "\n";
        os << "oracle agreement  : moments=" << yesno(*rep.sources.moments_match)
           << " triangles=" << yesno(*rep.sources.triangles_match)
           << " energy=" << yesno(*rep.sources.energy_match) << "\n";
    }
    return os.str();
}

std::string report_csv(const quct::InvariantReport& rep) {
    std::ostringstream os;
    os << "ring,order,classification,degree,energy,energy_approx,hyperenergetic,"
          "hyperenergetic_classifier,ramanujan,ramanujan_classifier,triangles";
    for (std::size_t k = 1; k <= rep.moments.size(); ++k) os << ",s" << k;
    os << ",diameter,tensor_decomposes\n";
    os << rep.ring << "," << rep.order << "," << rep.classification << "," << rep.degree << ",\""
       << rep.energy.str() << "\"," << format_double(rep.energy_approx) << ","
       << rep.hyperenergetic.computed << "," << rep.hyperenergetic.classifier << ","
       << rep.ramanujan.computed << "," << rep.ramanujan.classifier << "," << rep.triangles.get_str();
    for (const auto& m : rep.moments) os << "," << m.get_str();
    os << ",";
    if (rep.diameter) {
        os << *rep.diameter;
    } else if (rep.diameter_infinite) {
        os << "INFINITE";
    }
    os << "," << (rep.tensor_decomposable ? (*rep.tensor_decomposable ? "1" : "0") : "") << "\n";
    return os.str();
}

int cmd_report(const Options& opt) {
    const auto ring = quct::ProductRing::build(opt.spec, opt.cap);

    if (opt.method == "oracle") {
        const auto character = quct::character_spectrum(ring, opt.cap);
        const auto graph = quct::cayley_graph(ring, opt.cap);
        const auto jacobi = quct::jacobi_spectrum(graph, opt.cap);
        const auto walks = quct::walk_moments(graph, opt.k_max);
        const auto diameter = quct::diameter_bfs(graph);
        double energy = 0.0;
        for (double v : character.values) energy += std::fabs(v);
        const bool loopless = !graph.has_loops();
        const std::uint64_t triangles = loopless ? quct::triangle_count_oracle(graph) : 0;

        if (opt.format == "json") {
            quct::Json out;
            out["ring"] = ring.canonical();
            out["order"] = ring.order();
            out["classification"] = quct::to_string(ring.residue_profile().tag);
            out["degree"] = *graph.regular_degree();
            out["spectrum_character"] = character.values;
            out["spectrum_jacobi"] = jacobi.values;
            out["energy_numeric"] = energy;
            quct::Json moments = quct::Json::array();
            for (unsigned k = 1; k <= opt.k_max; ++k) moments.push_back(walks[k].get_str());
            out["moments"] = moments;
            out["triangles"] = triangles;
            if (diameter) {
                out["diameter"] = *diameter;
            } else {
                out["diameter"] = "INFINITE";
            }
            emit(out.dump(2) + "\n", opt);
        } else {
            std::ostringstream os;
            os << "ring              : " << ring.canonical() << "\n";
            os << "order             : " << ring.order() << "\n";
            os << "degree            : " << *graph.regular_degree() << "\n";
            os << "spectrum (character):";
            for (double v : character.values) os << " " << format_double(v);
            os << "\n";
            os << "energy (numeric)  : " << format_double(energy) << "\n";
            os << "moments s1..s" << opt.k_max << "   :";
            for (unsigned k = 1; k <= opt.k_max; ++k) os << " " << walks[k].get_str();
            os << "\n";
            os << "triangles         : " << triangles << "\n";
            os << "diameter          : ";
            if (diameter) {
                os << *diameter;
            } else {
                os << "INFINITE";
            }
            os << "\n";
            emit(os.str(), opt);
        }
        return 0;
    }

    const bool with_oracle = opt.method == "both";
    const auto rep = quct::invariant_report(ring, opt.k_max, with_oracle, 1e-8, opt.cap);
    const auto spec = quct::closed_spectrum(ring);

    if (opt.format == "json") {
        quct::Json out = quct::to_json(rep);
        out["spectrum"] = quct::to_json(spec);
        emit(out.dump(2) + "\n", opt);
    } else if (opt.format == "csv") {
        emit(report_csv(rep), opt);
    } else {
        emit(report_table(rep, spec), opt);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// survey
// ---------------------------------------------------------------------------

struct SurveyRow {
    std::uint64_t order;
    std::string ring;
    std::uint64_t degree;
    std::string energy;
    double energy_approx;
    quct::ClassifiedBool hyper;
    quct::ClassifiedBool ramanujan;
    std::string triangles;
};

int cmd_survey(const Options& opt) {
    if (opt.max_order > opt.cap) {
        throw quct::SizeCapExceeded("survey max-order " + std::to_string(opt.max_order) +
                                    " exceeds the cap " + std::to_string(opt.cap));
    }
    const auto specs = quct::enumerate_rings(opt.max_order);
    std::vector<SurveyRow> rows(specs.size());
    quct::parallel_for(specs.size(), [&](std::size_t i) {
        const auto ring = quct::ProductRing::build(specs[i], opt.cap);
        const auto spec = quct::closed_spectrum(ring);
        SurveyRow& row = rows[i];
        row.order = ring.order();
        row.ring = ring.canonical();
        row.degree = static_cast<std::uint64_t>(spec.top().value.as_integer().get_ui());
        const auto energy = quct::energy_closed(ring);
        row.energy = energy.str();
        row.energy_approx = energy.approx_value();
        row.hyper = quct::hyperenergetic(ring);
        row.ramanujan = {quct::ramanujan_check(spec, row.degree), quct::ramanujan_classified(ring)};
        row.triangles = quct::triangles_closed(ring).get_str();
    });

    std::ostringstream os;
    if (opt.format == "json") {
        quct::Json out = quct::Json::array();
        for (const auto& r : rows) {
            quct::Json row;
            row["order"] = r.order;
            row["ring"] = r.ring;
            row["degree"] = r.degree;
            row["energy"] = r.energy;
            row["energy_approx"] = r.energy_approx;
            row["hyperenergetic"] = quct::Json{{"computed", r.hyper.computed},
                                               {"classifier", r.hyper.classifier},
                                               {"agree", r.hyper.agree()}};
            row["ramanujan"] = quct::Json{{"computed", r.ramanujan.computed},
                                          {"classifier", r.ramanujan.classifier},
                                          {"agree", r.ramanujan.agree()}};
            row["triangles"] = r.triangles;
            out.push_back(row);
        }
        os << out.dump(2) << "\n";
    } else if (opt.format == "csv") {
        os << "order,ring,degree,energy,energy_approx,hyperenergetic,hyperenergetic_classifier,"
              "hyperenergetic_agree,ramanujan,ramanujan_classifier,ramanujan_agree,triangles\n";
        for (const auto& r : rows) {
            os << r.order << "," << r.ring << "," << r.degree << ",\"" << r.energy << "\","
               << format_double(r.energy_approx) << "," << r.hyper.computed << ","
               << r.hyper.classifier << "," << r.hyper.agree() << "," << r.ramanujan.computed << ","
               << r.ramanujan.classifier << "," << r.ramanujan.agree() << "," << r.triangles << "\n";
        }
    } else {
        os << "order  ring                  degree  energy~      hyper  class  ram    class  triangles\n";
        for (const auto& r : rows) {
            std::ostringstream line;
            line << r.order;
            std::string order_s = line.str();
            os << order_s << std::string(order_s.size() < 7 ? 7 - order_s.size() : 1, ' ');
            os << r.ring << std::string(r.ring.size() < 22 ? 22 - r.ring.size() : 1, ' ');
            std::string deg = std::to_string(r.degree);
            os << deg << std::string(deg.size() < 8 ? 8 - deg.size() : 1, ' ');
            std::string en = format_double(r.energy_approx);
            os << en << std::string(en.size() < 13 ? 13 - en.size() : 1, ' ');
            os << yesno(r.hyper.computed) << (r.hyper.computed ? "    " : "     ");
            os << yesno(r.hyper.classifier) << (r.hyper.classifier ? "    " : "     ");
            os << yesno(r.ramanujan.computed) << (r.ramanujan.computed ? "    " : "     ");
            os << yesno(r.ramanujan.classifier) << (r.ramanujan.classifier ? "    " : "     ");
            os << r.triangles;
            if (!r.hyper.agree()) os << "  [hyperenergetic classifier disagrees]";
            if (!r.ramanujan.agree()) os << "  [ramanujan classifier disagrees]";
            os << "\n";
        }
    }
    emit(os.str(), opt);
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(const Options& opt) {
    std::vector<quct::RingSpec> targets;
    if (!opt.spec.empty()) {
        targets.push_back(quct::parse_ring_spec(opt.spec, opt.cap));
    } else {
        if (opt.max_order == 0) {
            throw quct::ParseError("verify needs a ring spec or --max-order");
        }
        if (opt.max_order > opt.cap) {
            throw quct::SizeCapExceeded("verify max-order exceeds the cap");
        }
        targets = quct::enumerate_rings(opt.max_order, /*include_unsupported=*/true);
    }

    std::vector<std::vector<quct::CheckResult>> results(targets.size());
    quct::parallel_for(targets.size(), [&](std::size_t i) {
        const auto ring = quct::ProductRing::build(targets[i], opt.cap);
        results[i] = quct::verify_ring(ring, opt.k_max, 1e-8, opt.cap);
    });

    std::ostringstream os;
    std::vector<quct::CheckResult> failed;
    std::size_t total = 0;
    for (const auto& ring_results : results) {
        for (const auto& check : ring_results) {
            ++total;
            os << (check.pass ? "[PASS] " : "[FAIL] ") << check.ring << " " << check.invariant;
            if (!check.detail.empty()) os << " (" << check.detail << ")";
            os << "\n";
            if (!check.pass) failed.push_back(check);
        }
    }
    if (failed.empty()) {
        os << "all " << total << " checks passed\n";
    } else {
        os << total << " checks, " << failed.size() << " failing\n";
    }
    if (!failed.empty()) {
        quct::Json diag;
        diag["failed"] = quct::Json::array();
        for (const auto& check : failed) diag["failed"].push_back(quct::to_json(check));
        os << diag.dump(2) << "\n";
    }
    emit(os.str(), opt);
    return failed.empty() ? 0 : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic unitary Cayley graphs of finite commutative rings"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        cmd->add_option("--k-max", opt.k_max, "highest spectral moment")->check(CLI::Range(1u, 16u));
        cmd->add_option("--cap", opt.cap, "ring order cap (default 100000, env QUCT_CAP)");
        cmd->add_option("--out", opt.out, "write output to a file instead of stdout");
    };

    auto* report = app.add_subcommand("report", "spectrum and invariant report for one ring");
    report->add_option("spec", opt.spec, "ring spec, e.g. Z45, F9*F5, F5[x]/(x^2)")->required();
    report->add_option("--method", opt.method, "closed forms, oracle, or both")
        ->check(CLI::IsMember({"closed", "oracle", "both"}));
    add_common(report);

    auto* survey = app.add_subcommand("survey", "closed-form survey of all supported rings up to a bound");
    survey->add_option("--max-order", opt.max_order, "largest ring order to include")->required();
    add_common(survey);

    auto* verify = app.add_subcommand("verify", "closed-vs-oracle invariant battery");
    verify->add_option("spec", opt.spec, "ring spec (or use --max-order)");
    verify->add_option("--max-order", opt.max_order, "verify every odd ring up to this order");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (report->parsed()) return cmd_report(opt);
        if (survey->parsed()) return cmd_survey(opt);
        return cmd_verify(opt);
    } catch (const quct::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const quct::NotPrimePower& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const quct::UnsupportedRingClass& e) {
        std::cerr << "unsupported ring class: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const quct::WrongClassification& e) {
        std::cerr << "unsupported ring class: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const quct::EvenCharacteristicUnsupported& e) {
        std::cerr << "unsupported ring class: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const quct::SizeCapExceeded& e) {
        std::cerr << "size cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const quct::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
}
