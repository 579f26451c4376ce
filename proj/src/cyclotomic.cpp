#include "fge/cyclotomic.hpp"

#include <cstddef>
#include <stdexcept>

#include "fge/lsystem.hpp"

namespace fge {

namespace {

using Poly = std::vector<std::int64_t>;  // coefficients, constant term first

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Exact division; the remainder is known to vanish.
Poly poly_div(Poly num, const Poly& den) {
    Poly out(num.size() - den.size() + 1, 0);
    for (std::size_t i = out.size(); i-- > 0;) {
        const std::int64_t q = num[i + den.size() - 1] / den.back();
        out[i] = q;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q * den[j];
    }
    return out;
}

Poly x_pow_minus_one(int d) {
    Poly p(static_cast<std::size_t>(d) + 1, 0);
    p.front() = -1;
    p.back() = 1;
    return p;
}

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
    Poly num{1};
    Poly den{1};
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        switch (mobius(n / d)) {
            case 1: num = poly_mul(num, x_pow_minus_one(d)); break;
            case -1: den = poly_mul(den, x_pow_minus_one(d)); break;
            default: break;
        }
    }
    return poly_div(std::move(num), den);
}

CyclotomicLattice::CyclotomicLattice(int n) : n_(n) {
    const Poly phi = cyclotomic_polynomial(n);
    rank_ = static_cast<int>(phi.size()) - 1;

    units_.assign(static_cast<std::size_t>(n_) * rank_, 0);
    std::vector<std::int64_t> power(static_cast<std::size_t>(rank_), 0);
    power[0] = 1;
    for (int m = 0; m < n_; ++m) {
        std::copy(power.begin(), power.end(),
                  units_.begin() + static_cast<std::size_t>(m) * rank_);
        // multiply by zeta and reduce modulo the monic Phi_n
        const std::int64_t lead = power[static_cast<std::size_t>(rank_) - 1];
        for (int j = rank_ - 1; j > 0; --j) power[static_cast<std::size_t>(j)] = power[static_cast<std::size_t>(j - 1)];
        power[0] = 0;
        if (lead != 0)
            for (int j = 0; j < rank_; ++j)
                power[static_cast<std::size_t>(j)] -= lead * phi[static_cast<std::size_t>(j)];
    }

    basis_x_.resize(static_cast<std::size_t>(rank_));
    basis_y_.resize(static_cast<std::size_t>(rank_));
    for (int j = 0; j < rank_; ++j)
        unit_direction(j, n_, basis_x_[static_cast<std::size_t>(j)], basis_y_[static_cast<std::size_t>(j)]);
}

void CyclotomicLattice::to_plane(const std::int64_t* coords, double& x, double& y) const {
    x = 0.0;
    y = 0.0;
    for (int j = 0; j < rank_; ++j) {
        const double c = static_cast<double>(coords[j]);
        x += c * basis_x_[static_cast<std::size_t>(j)];
        y += c * basis_y_[static_cast<std::size_t>(j)];
    }
}

}  // namespace fge
