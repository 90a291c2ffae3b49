#pragma once

// Exact arithmetic in the quartic field Q(sqrt2, sqrt3).  Every entry of the
// explicit EPN matrices at N <= 8 lives here (they involve only sqrt2, sqrt3
// and sqrt6), so rank and Jordan decisions on them can be made exactly.

#include "epn/rational.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>

namespace epn {

/// q0 + q2*sqrt(2) + q3*sqrt(3) + q6*sqrt(6) with rational coefficients.
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(int v) : q0_(v) {}                       // NOLINT(google-explicit-constructor)
    ExactScalar(Rational v) : q0_(std::move(v)) {}       // NOLINT(google-explicit-constructor)
    ExactScalar(Rational q0, Rational q2, Rational q3, Rational q6)
        : q0_(std::move(q0)), q2_(std::move(q2)), q3_(std::move(q3)), q6_(std::move(q6)) {}

    const Rational& q0() const { return q0_; }
    const Rational& q2() const { return q2_; }
    const Rational& q3() const { return q3_; }
    const Rational& q6() const { return q6_; }

    bool is_zero() const { return q0_ == 0 && q2_ == 0 && q3_ == 0 && q6_ == 0; }
    bool is_rational() const { return q2_ == 0 && q3_ == 0 && q6_ == 0; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.q0_ == b.q0_ && a.q2_ == b.q2_ && a.q3_ == b.q3_ && a.q6_ == b.q6_;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    ExactScalar operator-() const { return {-q0_, -q2_, -q3_, -q6_}; }

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
        return {a.q0_ + b.q0_, a.q2_ + b.q2_, a.q3_ + b.q3_, a.q6_ + b.q6_};
    }
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
        return {a.q0_ - b.q0_, a.q2_ - b.q2_, a.q3_ - b.q3_, a.q6_ - b.q6_};
    }
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        // basis products: sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3,
        // sqrt3*sqrt6 = 3 sqrt2, sqrt6*sqrt6 = 6
        return {a.q0_ * b.q0_ + 2 * a.q2_ * b.q2_ + 3 * a.q3_ * b.q3_ + 6 * a.q6_ * b.q6_,
                a.q0_ * b.q2_ + a.q2_ * b.q0_ + 3 * (a.q3_ * b.q6_ + a.q6_ * b.q3_),
                a.q0_ * b.q3_ + a.q3_ * b.q0_ + 2 * (a.q2_ * b.q6_ + a.q6_ * b.q2_),
                a.q0_ * b.q6_ + a.q6_ * b.q0_ + a.q2_ * b.q3_ + a.q3_ * b.q2_};
    }
    ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
    ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
    ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }

    /// Galois conjugate sqrt2 -> -sqrt2.
    ExactScalar conj2() const { return {q0_, -q2_, q3_, -q6_}; }
    /// Galois conjugate sqrt3 -> -sqrt3.
    ExactScalar conj3() const { return {q0_, q2_, -q3_, -q6_}; }

    ExactScalar inverse() const {
        if (is_zero()) throw std::domain_error("ExactScalar: division by zero");
        ExactScalar num = conj2() * conj3() * conj2().conj3();
        ExactScalar norm = *this * num; // rational by construction
        return {num.q0_ / norm.q0_, num.q2_ / norm.q0_, num.q3_ / norm.q0_, num.q6_ / norm.q0_};
    }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
        return a * b.inverse();
    }

    double value() const {
        static const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
        return to_double(q0_) + to_double(q2_) * s2 + to_double(q3_) * s3 + to_double(q6_) * s6;
    }

    std::string str() const;

private:
    Rational q0_, q2_, q3_, q6_;
};

/// sqrt(m) for a non-negative integer, when it lies in Q(sqrt2, sqrt3):
/// m = s^2 * d with squarefree d in {1, 2, 3, 6}.
std::optional<ExactScalar> exact_sqrt(const Integer& m);

} // namespace epn
