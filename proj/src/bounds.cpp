#include "rproj/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rproj {

namespace {

double clip_unit(double v) { return std::clamp(v, 0.0, 1.0); }

void require_positive_eps(double eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("eps must be positive and finite");
    }
}

void require_rows(unsigned long rows)
{
    if (rows == 0) {
        throw std::invalid_argument("embedding dimension must be positive");
    }
}

double raw_achlioptas(unsigned long rows, double eps)
{
    const double m = static_cast<double>(rows);
    return 2.0 * std::exp(-(m * eps * eps / 4.0) * (1.0 - 2.0 * eps / 3.0));
}

double raw_subgamma(unsigned long rows, double eps)
{
    const double m = static_cast<double>(rows);
    return 2.0 * std::exp(-m * eps * eps / (4.0 + 4.0 * eps));
}

double raw_nogo(unsigned long rows, double eps)
{
    const double m = static_cast<double>(rows);
    return 2.0 * std::exp(-m * eps * eps / 4.0);
}

}  // namespace

std::string to_string(BoundMethod method)
{
    switch (method) {
    case BoundMethod::sharp:
        return "sharp";
    case BoundMethod::achlioptas:
        return "achlioptas";
    case BoundMethod::subgamma:
        return "subgamma";
    case BoundMethod::nogo_lower:
        return "nogo_lower";
    case BoundMethod::empirical:
        return "empirical";
    }
    return "unknown";
}

SharpTailBound::SharpTailBound(unsigned long rows, unsigned long sparsity, unsigned qmax)
    : sparsity_(sparsity), qmax_(qmax), approximate_(!exact_path_feasible(sparsity, qmax))
{
    require_rows(rows);
    if (qmax < 2 || qmax % 2 != 0) {
        throw std::invalid_argument("qmax must be an even integer >= 2");
    }
    if (sparsity == 0) {
        throw std::invalid_argument("sparsity must be positive");
    }
    log_moments_.assign(qmax + 1, -std::numeric_limits<double>::infinity());
    if (approximate_) {
        const DistortionMomentTable<double> table(rows, sparsity, qmax);
        for (unsigned q = 2; q <= qmax; q += 2) {
            log_moments_[q] = table[q] > 0 ? std::log(table[q])
                                           : -std::numeric_limits<double>::infinity();
        }
    } else {
        const DistortionMomentTable<Rational> table(rows, sparsity, qmax);
        for (unsigned q = 2; q <= qmax; q += 2) {
            log_moments_[q] = log_abs(table[q]);
        }
    }
}

SharpBound SharpTailBound::operator()(double eps) const
{
    require_positive_eps(eps);
    SharpBound out;
    out.approximate = approximate_;
    if (sparsity_ == 1) {
        out.bound = out.raw = 0.0;
        out.best_q = 2;
        return out;
    }
    double best_log = std::numeric_limits<double>::infinity();
    for (unsigned q = 2; q <= qmax_; q += 2) {
        const double candidate = log_moments_[q] - q * std::log(eps);
        if (candidate < best_log) {
            best_log = candidate;
            out.best_q = q;
        }
    }
    out.raw = std::exp(best_log);
    out.bound = clip_unit(out.raw);
    if (out.raw >= 1.0) {
        out.best_q = 0;
    }
    return out;
}

SharpBound sharp_tail_bound(unsigned long rows, unsigned long sparsity, double eps, unsigned qmax)
{
    return SharpTailBound(rows, sparsity, qmax)(eps);
}

double achlioptas_bound(unsigned long rows, double eps)
{
    require_rows(rows);
    require_positive_eps(eps);
    return clip_unit(raw_achlioptas(rows, eps));
}

double subgamma_bound(unsigned long rows, double eps)
{
    require_rows(rows);
    require_positive_eps(eps);
    return clip_unit(raw_subgamma(rows, eps));
}

double nogo_lower_curve(unsigned long rows, double eps)
{
    require_rows(rows);
    require_positive_eps(eps);
    return clip_unit(raw_nogo(rows, eps));
}

void validate_eps_grid(const std::vector<double>& eps_grid)
{
    if (eps_grid.empty()) {
        throw std::invalid_argument("eps grid is empty");
    }
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        require_positive_eps(eps_grid[i]);
        if (i > 0 && !(eps_grid[i] > eps_grid[i - 1])) {
            throw std::invalid_argument("eps grid must be strictly increasing");
        }
    }
}

std::vector<TailCurve> compare_curves(unsigned long rows, unsigned long sparsity,
                                      const std::vector<double>& eps_grid, unsigned qmax)
{
    validate_eps_grid(eps_grid);
    const SharpTailBound sharp(rows, sparsity, qmax);

    auto make = [&](BoundMethod method) {
        TailCurve curve;
        curve.method = method;
        curve.rows = rows;
        curve.qmax = qmax;
        curve.points.reserve(eps_grid.size());
        return curve;
    };

    TailCurve sharp_curve = make(BoundMethod::sharp);
    sharp_curve.sparsity = sparsity;
    sharp_curve.approximate = sharp.approximate();
    std::string orders;
    for (double eps : eps_grid) {
        const auto b = sharp(eps);
        sharp_curve.points.push_back({eps, b.bound, b.raw});
        orders += (orders.empty() ? "" : " ") + std::to_string(b.best_q);
    }
    sharp_curve.metadata["best_q"] = orders;

    auto closed_form = [&](BoundMethod method, double (*formula)(unsigned long, double)) {
        TailCurve curve = make(method);
        for (double eps : eps_grid) {
            const double raw = formula(rows, eps);
            curve.points.push_back({eps, clip_unit(raw), raw});
        }
        return curve;
    };

    TailCurve subgamma = closed_form(BoundMethod::subgamma, &raw_subgamma);
    subgamma.metadata["variance_factor"] = "2m";
    subgamma.metadata["scale"] = "2";
    TailCurve nogo = closed_form(BoundMethod::nogo_lower, &raw_nogo);
    nogo.metadata["asymptotic"] = "o(1) term set to 0";

    return {std::move(sharp_curve), closed_form(BoundMethod::achlioptas, &raw_achlioptas),
            std::move(subgamma), std::move(nogo)};
}

}  // namespace rproj
