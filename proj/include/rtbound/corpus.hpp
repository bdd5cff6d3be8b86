#pragma once

#include "rtbound/analyzer.hpp"
#include "rtbound/recdsl.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rtbound {

/// One benchmark relation plus its reference results.
struct CorpusEntry {
    std::string id;
    std::string rec_text;             // shipped .rec content
    bool bivariate = false;
    BoundShape shape = BoundShape::LogN;          // the accepted bound shape
    std::vector<BoundShape> fail_shapes;          // shapes the decision rejects
    struct EpsRow {
        Rat eps;
        std::uint64_t N;
        Rat d;  // reference value, tolerance 5e-3
    };
    std::vector<EpsRow> rows;
    Rat d100;

    /// sort_sel only: reference coefficient of the plugged-in selection bound
    /// per epsilon; the relation text carries the eps = 0.01 instance.
    std::map<Rat, Rat> tstar_by_eps;

    Relation parse() const { return parse_relation(rec_text); }
    /// The relation analyzed at a given epsilon (applies the T* swap).
    Relation parse_for_eps(const Rat& eps) const;
};

const std::vector<CorpusEntry>& corpus_list();

const CorpusEntry& corpus_entry(const std::string& id);

inline const Rat& corpus_d_tolerance() {
    static const Rat tol(5, 1000);
    return tol;
}

/// One reference comparison made by the corpus run.
struct FixtureCheck {
    std::string entry;
    std::string label;     // "decide ln n", "N @ eps=0.5", "d @ eps=0.5", "d100"
    std::string expected;
    std::string actual;
    bool passed = false;
};

struct CorpusCell {
    std::string entry;
    Rat eps;
    AnalysisResult result;
};

struct CorpusReport {
    std::vector<FixtureCheck> checks;
    std::vector<CorpusCell> cells;
    double wall_ms = 0.0;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Analyzes every corpus entry at the given epsilons and compares verdicts,
/// thresholds, d values (tolerance 5e-3) and d_100 against the fixtures.
/// `inject_mismatch` corrupts one fixture on purpose (harness self-test).
CorpusReport run_corpus(const std::vector<Rat>& epsilons, bool inject_mismatch = false);

}  // namespace rtbound
