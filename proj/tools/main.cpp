#include "rtbound/analyzer.hpp"
#include "rtbound/corpus.hpp"
#include "rtbound/evalcore.hpp"
#include "rtbound/recdsl.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using json = nlohmann::json;
using namespace rtbound;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::optional<BoundShape> shape_of_flag(const std::string& s) {
    if (s == "logn") return BoundShape::LogN;
    if (s == "n") return BoundShape::Linear;
    if (s == "nlogn") return BoundShape::NLogN;
    return std::nullopt;  // "auto"
}

json poly_json(const PseudoPoly& p) {
    json j;
    j["log"] = json::array();
    j["plain"] = json::array();
    for (const Rat& a : p.log_coeffs) j["log"].push_back(to_double(a));
    for (const Rat& b : p.plain_coeffs) j["plain"].push_back(to_double(b));
    return j;
}

json result_json(const AnalysisResult& r, double time_ms) {
    json j;
    j["verdict"] = r.yes() ? "yes" : "fail";
    j["shape"] = r.shape_str;
    if (r.epsilon) j["epsilon"] = to_double(*r.epsilon);
    if (r.d) j["d"] = to_double(*r.d);
    if (r.threshold_N) j["N"] = *r.threshold_N;
    if (r.prefix_max) j["d_prefix"] = to_double(*r.prefix_max);
    if (r.threshold_d) j["d_threshold"] = to_double(*r.threshold_d);
    if (r.p) j["p"] = poly_json(*r.p);
    if (r.q) j["q"] = poly_json(*r.q);
    j["time_ms"] = time_ms;
    return j;
}

void print_result_text(const AnalysisResult& r, double time_ms) {
    std::cout << "verdict:   " << (r.yes() ? "yes" : "fail") << "\n";
    std::cout << "shape:     " << r.shape_str << "\n";
    if (r.epsilon) std::cout << "epsilon:   " << decimal_string(*r.epsilon) << "\n";
    if (r.d) std::cout << "d:         " << fixed3_string(*r.d) << "\n";
    if (r.threshold_N) std::cout << "N:         " << *r.threshold_N << "\n";
    if (r.prefix_max)
        std::cout << "d_prefix:  " << to_double(*r.prefix_max) << "\n";
    if (r.threshold_d)
        std::cout << "d_threshold: " << to_double(*r.threshold_d) << "\n";
    for (const auto& dmsg : r.diagnostics) std::cout << "  " << dmsg << "\n";
    std::cout << "time_ms:   " << time_ms << "\n";
}

int cmd_analyze(const std::string& file, const std::string& bound,
                const std::string& mode, const std::string& epsilon, bool as_json) {
    Relation rel = parse_relation(read_file(file));
    std::optional<Rat> eps;
    if (mode == "synth") eps = rat_from_decimal(epsilon);

    std::vector<BoundShape> shapes;
    if (auto s = shape_of_flag(bound))
        shapes = {*s};
    else
        shapes = {kAllShapes.begin(), kAllShapes.end()};

    auto t0 = std::chrono::steady_clock::now();
    AnalysisResult result;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        if (std::holds_alternative<UniRecurrence>(rel)) {
            const auto& uni = std::get<UniRecurrence>(rel);
            result = eps ? uni_synth(uni, shapes[i], *eps) : uni_dec(uni, shapes[i]);
        } else {
            const auto& bi = std::get<BiRecurrence>(rel);
            result = eps ? bi_synth(bi, shapes[i], *eps) : bi_dec(bi, shapes[i]);
        }
        if (result.yes()) break;
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();

    if (as_json)
        std::cout << result_json(result, ms).dump(2) << "\n";
    else
        print_result_text(result, ms);
    return result.yes() ? 0 : 2;
}

int cmd_eval(const std::string& file, std::uint64_t upto, std::uint64_t n_fixed,
             bool as_json) {
    Relation rel = parse_relation(read_file(file));
    std::vector<std::string> printed;
    bool exact = true;
    if (std::holds_alternative<UniRecurrence>(rel)) {
        const auto& uni = std::get<UniRecurrence>(rel);
        EvalTable t = eval_uni(uni, upto);
        exact = t.exact;
        for (std::uint64_t i = 1; i <= upto; ++i) {
            if (t.exact)
                printed.push_back(decimal_string(t.exact_at(i)));
            else
                printed.push_back("[" + std::to_string(to_double(t.at(i).lo)) + "," +
                                  std::to_string(to_double(t.at(i).hi)) + "]");
        }
    } else {
        const auto& bi = std::get<BiRecurrence>(rel);
        for (std::uint64_t m = 1; m <= upto; ++m) {
            Interval v = eval_bi(bi, n_fixed, m);
            if (v.is_point())
                printed.push_back(decimal_string(v.lo));
            else {
                printed.push_back("[" + std::to_string(to_double(v.lo)) + "," +
                                  std::to_string(to_double(v.hi)) + "]");
                exact = false;
            }
        }
    }
    if (as_json) {
        json j;
        j["values"] = printed;
        j["exact"] = exact;
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < printed.size(); ++i)
            std::cout << (i + 1) << "\t" << printed[i] << "\n";
    }
    return 0;
}

int cmd_corpus(const std::string& epsilons, bool as_json, bool inject) {
    std::vector<Rat> eps_list;
    std::stringstream ss(epsilons);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) eps_list.push_back(rat_from_decimal(item));

    CorpusReport rep = run_corpus(eps_list, inject);
    if (as_json) {
        json j;
        j["checks"] = json::array();
        for (const auto& c : rep.checks)
            j["checks"].push_back({{"entry", c.entry},
                                   {"check", c.label},
                                   {"expected", c.expected},
                                   {"actual", c.actual},
                                   {"passed", c.passed}});
        j["cells"] = json::array();
        for (const auto& cell : rep.cells) {
            json cj = result_json(cell.result, 0.0);
            cj["entry"] = cell.entry;
            cj.erase("time_ms");
            j["cells"].push_back(cj);
        }
        j["all_passed"] = rep.all_passed();
        j["time_ms"] = rep.wall_ms;
        std::cout << j.dump(2) << "\n";
    } else {
        std::string last_entry;
        for (const auto& c : rep.checks) {
            if (c.entry != last_entry) {
                std::cout << c.entry << "\n";
                last_entry = c.entry;
            }
            std::cout << "  " << (c.passed ? "ok  " : "FAIL") << "  " << c.label
                      << ": expected " << c.expected << ", got " << c.actual << "\n";
        }
        std::cout << (rep.all_passed() ? "all checks passed" : "some checks FAILED")
                  << " (" << rep.wall_ms << " ms)\n";
    }
    return rep.all_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expected-runtime bound analysis for randomized recurrences"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string file, bound = "auto", mode = "decide", epsilon = "0.01";
    bool as_json = false;

    auto* analyze = app.add_subcommand("analyze", "decide or synthesize a bound");
    analyze->add_option("file", file, "relation file (.rec)")->required();
    analyze->add_option("--bound", bound, "logn|n|nlogn|auto")
        ->check(CLI::IsMember({"logn", "n", "nlogn", "auto"}));
    analyze->add_option("--mode", mode, "decide|synth")
        ->check(CLI::IsMember({"decide", "synth"}));
    analyze->add_option("--epsilon", epsilon, "threshold parameter in (0,1)");
    analyze->add_flag("--json", as_json, "machine-readable report");

    std::uint64_t upto = 10, n_fixed = 1;
    auto* eval = app.add_subcommand("eval", "evaluate the relation table");
    eval->add_option("file", file, "relation file (.rec)")->required();
    eval->add_option("--upto", upto, "largest argument to evaluate");
    eval->add_option("--n", n_fixed, "fixed first argument (bivariate only)");
    eval->add_flag("--json", as_json, "machine-readable output");

    std::string epsilons = "0.5,0.3,0.1,0.01";
    bool inject = false;
    auto* corpus = app.add_subcommand("corpus", "reproduce the reference result tables");
    corpus->add_option("--epsilons", epsilons, "comma-separated epsilon list");
    corpus->add_flag("--json", as_json, "machine-readable report");
    corpus->add_flag("--inject-mismatch", inject, "corrupt one fixture (self-test)")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) return cmd_analyze(file, bound, mode, epsilon, as_json);
        if (eval->parsed()) return cmd_eval(file, upto, n_fixed, as_json);
        if (corpus->parsed()) return cmd_corpus(epsilons, as_json, inject);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
