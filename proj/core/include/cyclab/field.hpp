#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cyclab {

using Complex = std::complex<double>;

// Monomial index pairs (k,i) with 1 <= k+i <= degree, ordered by (k+i, k).
// There are degree*(degree+3)/2 of them per coefficient family.
constexpr int coeff_pair_count(int degree) { return degree * (degree + 3) / 2; }

constexpr int coeff_pair_index(int k, int i) {
    const int m = k + i;
    return (m - 1) * (m + 2) / 2 + k;
}

// Degree-1 coefficients (a10, a01, b10, b01): the projection of a field onto
// the coefficient space of its linearization.
struct LinearPart {
    Complex a10{0.0}, a01{0.0}, b10{0.0}, b01{0.0};
};

// Coefficients of the perturbation of the linear center,
//   xdot = -y + F(x,y),   ydot = x + G(x,y),
//   F = sum a_ki x^k y^i,  G = sum b_ki x^k y^i,   1 <= k+i <= degree.
// Storage is dense triangular in canonical (k+i, k) order. Coefficients are
// complex-capable; the sampling paths only ever produce real ones.
class PolyField {
public:
    explicit PolyField(int degree);

    int degree() const { return degree_; }
    int coeff_pairs() const { return coeff_pair_count(degree_); }
    // s = d(d+3): the real dimension of the coefficient space (both families).
    int real_dimension() const { return 2 * coeff_pair_count(degree_); }

    Complex a(int k, int i) const { return a_[index_checked(k, i)]; }
    Complex b(int k, int i) const { return b_[index_checked(k, i)]; }
    void set_a(int k, int i, Complex v) { a_[index_checked(k, i)] = v; }
    void set_b(int k, int i, Complex v) { b_[index_checked(k, i)] = v; }

    std::span<const Complex> a_coeffs() const { return a_; }
    std::span<const Complex> b_coeffs() const { return b_; }

    LinearPart linear_part() const;
    bool is_real(double tol = 0.0) const;

    bool operator==(const PolyField&) const = default;

private:
    int index_checked(int k, int i) const;

    int degree_;
    std::vector<Complex> a_, b_;
};

// Euclidean norm of the concatenated coefficient vector,
// sqrt(sum |a_ki|^2 + sum |b_ki|^2).
double coeff_norm(const PolyField& field);

// Canonical packing of a real field into R^s: all a-coefficients in
// (k+i, k) order, then all b-coefficients.
PolyField field_from_vector(int degree, std::span<const double> v);
std::vector<double> field_to_vector(const PolyField& field);

// One-line JSON record {"degree":d,"a":[[k,i,re,im],...],"b":[...]} with
// entries in canonical order; doubles round-trip exactly.
std::string field_to_json(const PolyField& field);
PolyField field_from_json(const std::string& record);

}  // namespace cyclab
