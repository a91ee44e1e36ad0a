#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rproj/moments.hpp"

namespace rproj {

enum class BoundMethod { sharp, achlioptas, subgamma, nogo_lower, empirical };

std::string to_string(BoundMethod method);

struct TailPoint {
    double eps = 0.0;
    double bound = 0.0;  ///< clipped to [0, 1]
    double raw = 0.0;    ///< before clipping
};

/// (eps, bound) pairs from one method over a strictly increasing grid.
struct TailCurve {
    BoundMethod method = BoundMethod::sharp;
    unsigned long rows = 0;
    std::optional<unsigned long> sparsity;
    std::vector<TailPoint> points;
    unsigned qmax = 0;
    bool approximate = false;
    /// Free-form provenance (constants used, asymptotic labels, ...).
    std::map<std::string, std::string> metadata;
};

struct SharpBound {
    double bound = 1.0;
    double raw = 1.0;
    unsigned best_q = 0;  ///< 0 when no even order improves on the trivial bound
    bool approximate = false;
};

/// Even moments nu_2, nu_4, ..., nu_qmax of the averaged distortion, as doubles.
/// Exact arithmetic when feasible, otherwise the log-space path.
class SharpTailBound {
public:
    SharpTailBound(unsigned long rows, unsigned long sparsity, unsigned qmax = kDefaultQmax);

    /// min over even q <= qmax of nu_q / eps^q, clipped to 1.
    SharpBound operator()(double eps) const;

    bool approximate() const { return approximate_; }
    unsigned qmax() const { return qmax_; }

private:
    unsigned long sparsity_;
    unsigned qmax_;
    bool approximate_;
    /// log nu_q for even q (index q), -inf when nu_q == 0.
    std::vector<double> log_moments_;
};

SharpBound sharp_tail_bound(unsigned long rows, unsigned long sparsity, double eps,
                            unsigned qmax = kDefaultQmax);

/// 2 exp(-(m eps^2 / 4)(1 - 2 eps / 3)), clipped.
double achlioptas_bound(unsigned long rows, double eps);

/// 2 exp(-m eps^2 / (4 + 4 eps)): sub-gamma tail of (chi2_m - m) / m with
/// variance factor 2m and scale 2, clipped.
double subgamma_bound(unsigned long rows, double eps);

/// 2 exp(-m eps^2 / 4), clipped. Asymptotic lower curve with the o(1) term
/// dropped; a plotting reference, not a guarantee.
double nogo_lower_curve(unsigned long rows, double eps);

/// One curve per method (sharp, achlioptas, subgamma, nogo_lower) on a shared grid.
std::vector<TailCurve> compare_curves(unsigned long rows, unsigned long sparsity,
                                      const std::vector<double>& eps_grid,
                                      unsigned qmax = kDefaultQmax);

/// Throws unless the grid is nonempty, positive and strictly increasing.
void validate_eps_grid(const std::vector<double>& eps_grid);

}  // namespace rproj
