#include "cyclab/field.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "cyclab/errors.hpp"

namespace cyclab {

PolyField::PolyField(int degree) : degree_(degree) {
    if (degree < 2)
        throw DomainError("PolyField: degree must be >= 2, got " + std::to_string(degree));
    if (degree > 32)
        throw DomainError("PolyField: degree > 32 not supported");
    a_.assign(coeff_pair_count(degree), Complex{0.0});
    b_.assign(coeff_pair_count(degree), Complex{0.0});
}

int PolyField::index_checked(int k, int i) const {
    if (k < 0 || i < 0 || k + i < 1 || k + i > degree_)
        throw DomainError("PolyField: index (" + std::to_string(k) + "," + std::to_string(i) +
                          ") outside 1 <= k+i <= " + std::to_string(degree_));
    return coeff_pair_index(k, i);
}

LinearPart PolyField::linear_part() const {
    return LinearPart{a(1, 0), a(0, 1), b(1, 0), b(0, 1)};
}

bool PolyField::is_real(double tol) const {
    for (const auto& c : a_)
        if (std::abs(c.imag()) > tol) return false;
    for (const auto& c : b_)
        if (std::abs(c.imag()) > tol) return false;
    return true;
}

double coeff_norm(const PolyField& field) {
    double s = 0.0;
    for (const auto& c : field.a_coeffs()) s += std::norm(c);
    for (const auto& c : field.b_coeffs()) s += std::norm(c);
    return std::sqrt(s);
}

PolyField field_from_vector(int degree, std::span<const double> v) {
    const int n = coeff_pair_count(degree);
    if (static_cast<int>(v.size()) != 2 * n)
        throw DomainError("field_from_vector: expected " + std::to_string(2 * n) +
                          " entries, got " + std::to_string(v.size()));
    PolyField f(degree);
    for (int m = 1, idx = 0; m <= degree; ++m)
        for (int k = 0; k <= m; ++k, ++idx) {
            f.set_a(k, m - k, Complex{v[idx], 0.0});
            f.set_b(k, m - k, Complex{v[n + idx], 0.0});
        }
    return f;
}

std::vector<double> field_to_vector(const PolyField& field) {
    if (!field.is_real())
        throw DomainError("field_to_vector: field has complex coefficients");
    const int n = field.coeff_pairs();
    std::vector<double> v(2 * n);
    for (int m = 1, idx = 0; m <= field.degree(); ++m)
        for (int k = 0; k <= m; ++k, ++idx) {
            v[idx] = field.a(k, m - k).real();
            v[n + idx] = field.b(k, m - k).real();
        }
    return v;
}

std::string field_to_json(const PolyField& field) {
    nlohmann::ordered_json rec;
    rec["degree"] = field.degree();
    auto family = [&](auto getter) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (int m = 1; m <= field.degree(); ++m)
            for (int k = 0; k <= m; ++k) {
                const Complex c = getter(k, m - k);
                arr.push_back({k, m - k, c.real(), c.imag()});
            }
        return arr;
    };
    rec["a"] = family([&](int k, int i) { return field.a(k, i); });
    rec["b"] = family([&](int k, int i) { return field.b(k, i); });
    return rec.dump();
}

PolyField field_from_json(const std::string& record) {
    const auto rec = nlohmann::json::parse(record);
    const int degree = rec.at("degree").get<int>();
    PolyField f(degree);
    const int n = coeff_pair_count(degree);
    for (const char* name : {"a", "b"}) {
        const auto& arr = rec.at(name);
        if (static_cast<int>(arr.size()) != n)
            throw DomainError(std::string("field_from_json: family ") + name + " has " +
                              std::to_string(arr.size()) + " entries, expected " +
                              std::to_string(n));
        for (const auto& e : arr) {
            const int k = e.at(0).get<int>();
            const int i = e.at(1).get<int>();
            const Complex c{e.at(2).get<double>(), e.at(3).get<double>()};
            if (name[0] == 'a')
                f.set_a(k, i, c);
            else
                f.set_b(k, i, c);
        }
    }
    return f;
}

}  // namespace cyclab
