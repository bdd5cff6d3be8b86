#include "rtbound/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace rtbound {

namespace {

Rat dec(const char* s) { return rat_from_decimal(s); }

CorpusEntry make_entry(std::string id, std::string text, bool bi, BoundShape shape,
                       std::vector<BoundShape> fails,
                       std::vector<std::pair<const char*, std::pair<std::uint64_t, const char*>>> rows,
                       const char* d100) {
    CorpusEntry e;
    e.id = std::move(id);
    e.rec_text = std::move(text);
    e.bivariate = bi;
    e.shape = shape;
    e.fail_shapes = std::move(fails);
    for (const auto& [eps, nd] : rows)
        e.rows.push_back({dec(eps), nd.first, dec(nd.second)});
    e.d100 = dec(d100);
    return e;
}

std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> list;

    list.push_back(make_entry(
        "r_search",
        "# Sherwood randomized search in a sorted array\n"
        "rel T(n) = 6 + avg_halves(T)\n"
        "base T(1) = 1\n",
        false, BoundShape::LogN, {},
        {{"0.5", {13, "40.107"}},
         {"0.3", {25, "28.363"}},
         {"0.1", {97, "21.838"}},
         {"0.01", {1398, "19.762"}}},
        "15.129"));

    list.push_back(make_entry(
        "q_sort",
        "# randomized quicksort, pivot cost 2n\n"
        "rel T(n) = 2*n + 2*avg_all(T)\n"
        "base T(1) = 1\n",
        false, BoundShape::NLogN, {BoundShape::LogN, BoundShape::Linear},
        {{"0.5", {10, "9.001"}},
         {"0.3", {21, "6.143"}},
         {"0.1", {91, "4.556"}},
         {"0.01", {1458, "4.051"}}},
        "3.172"));

    list.push_back(make_entry(
        "q_select",
        "# randomized selection (k-th order statistic)\n"
        "rel T(n) = 4 + 2*n + avg_halves(T)\n"
        "base T(1) = 1\n",
        false, BoundShape::Linear, {BoundShape::LogN},
        {{"0.5", {33, "17.001"}},
         {"0.3", {54, "11.851"}},
         {"0.1", {160, "9.001"}},
         {"0.01", {1600, "8.091"}}},
        "7.909"));

    list.push_back(make_entry(
        "diam_a",
        "# point-set diameter, Euclidean metric\n"
        "rel T(n) = 2 + n + 2*n*ln(n) + avg_all(T)\n"
        "base T(1) = 1\n",
        false, BoundShape::NLogN, {BoundShape::LogN, BoundShape::Linear},
        {{"0.5", {3, "9.001"}},
         {"0.3", {3, "6.143"}},
         {"0.1", {4, "4.556"}},
         {"0.01", {4, "4.525"}}},
        "4.525"));

    list.push_back(make_entry(
        "diam_b",
        "# point-set diameter, L1 metric\n"
        "rel T(n) = 2 + n + 2*n + avg_all(T)\n"
        "base T(1) = 1\n",
        false, BoundShape::Linear, {BoundShape::LogN},
        {{"0.5", {9, "13.001"}},
         {"0.3", {14, "9.001"}},
         {"0.1", {40, "6.778"}},
         {"0.01", {400, "6.071"}}},
        "5.918"));

    {
        CorpusEntry e = make_entry(
            "sort_sel",
            "# sorting by repeated median selection\n"
            "rel T(n) = 5 + 8.091*n + T(floor(n/2)) + T(ceil(n/2))\n"
            "base T(1) = 1\n",
            false, BoundShape::NLogN, {BoundShape::LogN, BoundShape::Linear},
            {{"0.5", {18, "50.052"}},
             {"0.3", {29, "24.852"}},
             {"0.1", {87, "17.313"}},
             {"0.01", {866, "16.000"}}},
            "16.000");
        // coefficient of the plugged-in selection bound at each epsilon
        e.tstar_by_eps[dec("0.5")] = dec("17.001");
        e.tstar_by_eps[dec("0.3")] = dec("11.851");
        e.tstar_by_eps[dec("0.1")] = dec("9.001");
        e.tstar_by_eps[dec("0.01")] = dec("8.091");
        list.push_back(std::move(e));
    }

    list.push_back(make_entry(
        "coupon",
        "# coupon collector: n types, m still missing\n"
        "rel T(n,m) = {n} * {1/m} + T(n,m-1)\n"
        "base T(n,1) = {n} * 1\n",
        true, BoundShape::LogN, {},
        {{"0.5", {2, "3.001"}},
         {"0.3", {2, "1.858"}},
         {"0.1", {2, "1.223"}},
         {"0.01", {2, "1.021"}}},
        "0.910"));

    list.push_back(make_entry(
        "res_a",
        "# channel-conflict resolution, distributed clients\n"
        "rel T(n,m) = {n} * {e * 1/m} + T(n,m-1)\n"
        "base T(n,1) = {n} * 1\n",
        true, BoundShape::LogN, {},
        {{"0.5", {2, "6.437"}},
         {"0.3", {2, "4.312"}},
         {"0.1", {2, "3.132"}},
         {"0.01", {2, "2.756"}}},
        "2.472"));

    list.push_back(make_entry(
        "res_b",
        "# channel-conflict resolution, shared counter\n"
        "rel T(n,m) = {1} * {e} + T(n,m-1)\n"
        "base T(n,1) = {1} * 1\n",
        true, BoundShape::Linear, {BoundShape::LogN},
        {{"0.5", {2, "6.437"}},
         {"0.3", {2, "4.312"}},
         {"0.1", {2, "3.132"}},
         {"0.01", {2, "2.756"}}},
        "2.691"));

    return list;
}

}  // namespace

Relation CorpusEntry::parse_for_eps(const Rat& eps) const {
    if (tstar_by_eps.empty()) return parse();
    auto it = tstar_by_eps.find(eps);
    if (it == tstar_by_eps.end()) return parse();
    Relation rel = parse();
    auto& uni = std::get<UniRecurrence>(rel);
    for (auto& t : uni.expr.terms)
        if (t.atom == Atom::Var) t.coef = Coefficient(it->second);
    return rel;
}

const std::vector<CorpusEntry>& corpus_list() {
    static const std::vector<CorpusEntry> list = build_corpus();
    return list;
}

const CorpusEntry& corpus_entry(const std::string& id) {
    for (const auto& e : corpus_list())
        if (e.id == id) return e;
    throw std::out_of_range("no corpus entry named " + id);
}

namespace {

AnalysisResult analyze(const Relation& rel, BoundShape shape, const Rat* eps) {
    if (std::holds_alternative<UniRecurrence>(rel)) {
        const auto& uni = std::get<UniRecurrence>(rel);
        return eps ? uni_synth(uni, shape, *eps) : uni_dec(uni, shape);
    }
    const auto& bi = std::get<BiRecurrence>(rel);
    return eps ? bi_synth(bi, shape, *eps) : bi_dec(bi, shape);
}

UniRecurrence reduced_of(const Relation& rel) {
    if (std::holds_alternative<UniRecurrence>(rel)) return std::get<UniRecurrence>(rel);
    return reduce_bi(std::get<BiRecurrence>(rel)).uni;
}

}  // namespace

CorpusReport run_corpus(const std::vector<Rat>& epsilons, bool inject_mismatch) {
    CorpusReport rep;
    auto start = std::chrono::steady_clock::now();
    for (const auto& entry : corpus_list()) {
        Relation rel = entry.parse();

        for (BoundShape f : entry.fail_shapes) {
            AnalysisResult r = analyze(rel, f, nullptr);
            FixtureCheck c;
            c.entry = entry.id;
            c.label = "decide " + r.shape_str;
            c.expected = "fail";
            c.actual = r.yes() ? "yes" : "fail";
            c.passed = !r.yes();
            rep.checks.push_back(std::move(c));
        }
        {
            AnalysisResult r = analyze(rel, entry.shape, nullptr);
            FixtureCheck c;
            c.entry = entry.id;
            c.label = "decide " + r.shape_str;
            c.expected = "yes";
            c.actual = r.yes() ? "yes" : "fail";
            c.passed = r.yes();
            rep.checks.push_back(std::move(c));
        }

        for (const auto& row : entry.rows) {
            bool requested = epsilons.empty() ||
                             std::find(epsilons.begin(), epsilons.end(), row.eps) !=
                                 epsilons.end();
            if (!requested) continue;
            Relation eps_rel = entry.parse_for_eps(row.eps);
            AnalysisResult r = analyze(eps_rel, entry.shape, &row.eps);
            rep.cells.push_back({entry.id, row.eps, r});

            FixtureCheck cn;
            cn.entry = entry.id;
            cn.label = "N @ eps=" + decimal_string(row.eps);
            std::uint64_t expected_n = row.N + (inject_mismatch ? 1 : 0);
            inject_mismatch = false;  // corrupt a single fixture
            cn.expected = std::to_string(expected_n);
            cn.actual = r.threshold_N ? std::to_string(*r.threshold_N) : "-";
            cn.passed = r.threshold_N && *r.threshold_N == expected_n;
            rep.checks.push_back(std::move(cn));

            FixtureCheck cd;
            cd.entry = entry.id;
            cd.label = "d @ eps=" + decimal_string(row.eps);
            cd.expected = fixed3_string(row.d);
            cd.actual = r.d ? fixed3_string(*r.d) : "-";
            Rat err = r.d ? (*r.d > row.d ? *r.d - row.d : row.d - *r.d) : Rat(1);
            cd.passed = r.d && err <= corpus_d_tolerance();
            rep.checks.push_back(std::move(cd));
        }

        {
            UniRecurrence uni = reduced_of(rel);
            Rat d100 = d_z(uni, entry.shape, 100);
            FixtureCheck c;
            c.entry = entry.id;
            c.label = "d100";
            c.expected = fixed3_string(entry.d100);
            c.actual = fixed3_string(d100);
            Rat err = d100 > entry.d100 ? d100 - entry.d100 : entry.d100 - d100;
            c.passed = err <= corpus_d_tolerance();
            rep.checks.push_back(std::move(c));
        }
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return rep;
}

}  // namespace rtbound
