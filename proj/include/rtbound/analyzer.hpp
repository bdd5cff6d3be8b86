#pragma once

#include "rtbound/evalcore.hpp"
#include "rtbound/overapprox.hpp"
#include "rtbound/pseudopoly.hpp"
#include "rtbound/recdsl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rtbound {

enum class Verdict { Yes, Fail };

struct AnalysisResult {
    Verdict verdict = Verdict::Fail;
    BoundShape shape = BoundShape::LogN;
    std::string shape_str;                // "ln n", "n ln n", "n ln m", "m", ...
    std::optional<Rat> epsilon;
    std::optional<Rat> d;                 // rounded up at 1e-3
    std::optional<std::uint64_t> threshold_N;
    std::optional<PseudoPoly> p, q;
    std::optional<Rat> prefix_max;        // max of (Eval(n)-c)/f(n) over 2 <= n < N
    std::optional<Rat> threshold_d;       // (1_{deg=deg} C_q/C_p + eps) / (1 - eps)
    std::vector<std::string> diagnostics;

    bool yes() const { return verdict == Verdict::Yes; }
};

/// Decision algorithm: template, over-approximation, transformation,
/// coefficient checking. "fail" means "don't know", not a disproof.
AnalysisResult uni_dec(const UniRecurrence& rec, BoundShape f);

inline constexpr std::uint64_t kThresholdCap = 10'000'000;

/// Least N >= 2 such that the finite-range/limit split of d*p(n) >= q(n)
/// holds beyond N for the synthesized d. Requires deg(p) >= deg(q), C_p > 0.
std::uint64_t threshold_N(const PseudoPoly& p, const PseudoPoly& q, const Rat& eps);

/// Quantitative algorithm: decision, threshold, and the least d covering both
/// the finite prefix and the limit condition.
AnalysisResult uni_synth(const UniRecurrence& rec, BoundShape f, const Rat& eps);

struct BiReduction {
    UniRecurrence uni;  // recursion over m with T(1) = c
    RecExpr h;          // the separated factor over n
};

/// Drops n and replaces h by 1.
BiReduction reduce_bi(const BiRecurrence& rec);

AnalysisResult bi_dec(const BiRecurrence& rec, BoundShape f_m);
AnalysisResult bi_synth(const BiRecurrence& rec, BoundShape f_m, const Rat& eps);

/// Shape label of a bivariate bound h(n) * f(m): "n ln m", "m", ...
std::string bi_shape_string(const RecExpr& h, BoundShape f_m);

}  // namespace rtbound
