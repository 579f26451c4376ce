#pragma once

#include <cstdint>
#include <vector>

namespace fge {

// Exact integer arithmetic in Z[zeta_n], zeta_n = exp(2*pi*i/n). Turtle
// positions are integer combinations of the n unit headings; reducing powers
// of zeta modulo the n-th cyclotomic polynomial gives each lattice point one
// canonical coordinate vector of length phi(n), so point and cell equality
// can be tested without floating-point rounding.
class CyclotomicLattice {
  public:
    explicit CyclotomicLattice(int n);

    int n() const { return n_; }
    int rank() const { return rank_; }  // deg Phi_n = phi(n)

    // Canonical coordinates of zeta^m, m in [0, n).
    const std::int64_t* unit(int m) const { return units_.data() + static_cast<std::size_t>(m) * rank_; }

    // Numeric embedding of a coordinate vector into the plane.
    void to_plane(const std::int64_t* coords, double& x, double& y) const;

  private:
    int n_;
    int rank_;
    std::vector<std::int64_t> units_;  // n rows of length rank_
    std::vector<double> basis_x_;      // cos(2*pi*j/n), j < rank_
    std::vector<double> basis_y_;
};

// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<std::int64_t> cyclotomic_polynomial(int n);

}  // namespace fge
