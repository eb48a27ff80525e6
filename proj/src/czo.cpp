#include "dyadic/czo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadic {

Kernel Kernel::cauchy_real() {
    return Kernel{KernelKind::cauchy_real, Rational(1), Rational(1), Rational(1)};
}

Kernel Kernel::riesz(Rational d) {
    if (sgn(d) <= 0) throw std::invalid_argument("Kernel::riesz: d must be positive");
    return Kernel{KernelKind::riesz, std::move(d), Rational(1), Rational(1)};
}

long double to_long_double(const Rational& q) {
    return static_cast<long double>(q.get_num().get_d()) /
           static_cast<long double>(q.get_den().get_d());
}

long double kernel_eval(const Kernel& ker, const Point& x, const Point& y) {
    const Rational dist2 = squared_distance(x, y);
    if (sgn(dist2) == 0) throw std::invalid_argument("kernel_eval: x == y");
    const long double num = to_long_double(x[0] - y[0]);
    const long double r2 = to_long_double(dist2);
    switch (ker.kind) {
        case KernelKind::cauchy_real:
            return num / r2;
        case KernelKind::riesz: {
            const long double expo = (to_long_double(ker.growth_dim) + 1.0L) / 2.0L;
            return num / powl(r2, expo);
        }
    }
    throw std::logic_error("kernel_eval: unknown kernel kind");
}

std::vector<long double> apply_truncated(const DiscreteMeasure& mu, const Kernel& ker,
                                         const Rational& eps) {
    if (sgn(eps) <= 0) throw std::invalid_argument("apply_truncated: eps must be positive");
    return apply_truncated_sq(mu, ker, eps * eps);
}

std::vector<long double> apply_truncated_sq(const DiscreteMeasure& mu, const Kernel& ker,
                                            const Rational& eps2) {
    if (sgn(eps2) <= 0) throw std::invalid_argument("apply_truncated_sq: eps^2 must be positive");
    const auto& atoms = mu.atoms();
    std::vector<long double> values(atoms.size(), 0.0L);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        long double sum = 0.0L, comp = 0.0L;  // Kahan
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            if (i == j) continue;
            if (squared_distance(atoms[i].x, atoms[j].x) <= eps2) continue;
            const long double term = kernel_eval(ker, atoms[i].x, atoms[j].x) *
                                     to_long_double(atoms[j].f) * to_long_double(atoms[j].mass);
            const long double t = sum + term;
            if (fabsl(sum) >= fabsl(term))
                comp += (sum - t) + term;
            else
                comp += (term - t) + sum;
            sum = t;
        }
        values[i] = sum + comp;
    }
    return values;
}

long double weak11_statistic(const DiscreteMeasure& mu, const std::vector<long double>& values,
                             const Rational& f_l1) {
    if (values.size() != mu.size())
        throw std::invalid_argument("weak11_statistic: value count mismatch");
    if (sgn(f_l1) <= 0) throw hypothesis_error("weak11_statistic: ||f||_1 must be positive");

    std::vector<std::pair<long double, long double>> by_value;  // (|T f|, mass)
    by_value.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        by_value.emplace_back(fabsl(values[i]), to_long_double(mu.atoms()[i].mass));
    std::sort(by_value.begin(), by_value.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    const long double nudge = 1.0L - 0x1p-20L;
    const long double denom = to_long_double(f_l1);
    long double best = 0.0L, cum = 0.0L;
    std::size_t next = 0;
    for (std::size_t i = 0; i < by_value.size(); ++i) {
        const long double t = by_value[i].first;
        if (t <= 0.0L) break;
        while (next < by_value.size() && by_value[next].first > t * nudge)
            cum += by_value[next++].second;
        best = std::max(best, t * cum / denom);
    }
    return best;
}

}  // namespace dyadic
