#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "core/delta_rational.hpp"
#include "core/rational.hpp"

namespace miniomt {

using VarId = uint32_t;

// Sparse linear expression: sum of coeff*var plus a constant. Zero
// coefficients are never stored.
class LinearTerm {
public:
    LinearTerm() = default;
    explicit LinearTerm(Rational constant) : constant_(std::move(constant)) {}

    static LinearTerm variable(VarId v, Rational coeff = Rational(1)) {
        LinearTerm t;
        t.add_var(v, std::move(coeff));
        return t;
    }

    void add_var(VarId v, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(v, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) coeffs_.erase(it);
        }
    }
    void add_constant(const Rational& c) { constant_ += c; }

    LinearTerm& operator+=(const LinearTerm& o) {
        for (const auto& [v, c] : o.coeffs_) add_var(v, c);
        constant_ += o.constant_;
        return *this;
    }
    LinearTerm& operator-=(const LinearTerm& o) {
        for (const auto& [v, c] : o.coeffs_) add_var(v, -c);
        constant_ -= o.constant_;
        return *this;
    }
    LinearTerm& operator*=(const Rational& k) {
        if (k == 0) {
            coeffs_.clear();
            constant_ = 0;
            return *this;
        }
        for (auto& [v, c] : coeffs_) c *= k;
        constant_ *= k;
        return *this;
    }
    friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
    friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
    friend LinearTerm operator*(LinearTerm a, const Rational& k) { return a *= k; }
    LinearTerm operator-() const {
        LinearTerm t(*this);
        t *= Rational(-1);
        return t;
    }

    const std::map<VarId, Rational>& coeffs() const { return coeffs_; }
    const Rational& constant() const { return constant_; }
    bool is_constant() const { return coeffs_.empty(); }
    Rational coeff(VarId v) const {
        auto it = coeffs_.find(v);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    template <typename ValueMap>
    auto eval(const ValueMap& values) const {
        using Value = std::decay_t<decltype(values.at(VarId(0)))>;
        Value acc(constant_);
        for (const auto& [v, c] : coeffs_) acc += values.at(v) * c;
        return acc;
    }

    bool operator==(const LinearTerm& o) const = default;

private:
    std::map<VarId, Rational> coeffs_;
    Rational constant_ = 0;
};

}  // namespace miniomt
