#pragma once

#include <string>
#include <vector>

namespace teur {

/// Optional generalized-path profile h(tau) with h(0) = h(1) = 0.
class ExtraTerm {
public:
    struct Knot {
        double tau;
        double value;
    };

    /// amplitude * sin(pi * tau)
    static ExtraTerm sine(double amplitude);
    /// Piecewise-linear through the knots; first knot at 0, last at 1, both zero-valued.
    static ExtraTerm tabulated(std::vector<Knot> knots);

    double operator()(double tau) const;
    bool is_sine() const noexcept { return knots_.empty(); }
    double amplitude() const noexcept { return amplitude_; }
    const std::vector<Knot>& knots() const noexcept { return knots_; }

private:
    double amplitude_ = 0.0;
    std::vector<Knot> knots_;
};

/// Interpolation functions f, g on the unit interval with f(0) = g(1) = 1 and
/// f(1) = g(0) = 0. g must be nonnegative.
class Schedule {
public:
    enum class Kind { Linear, Polynomial, Tabulated };

    struct Knot {
        double tau;
        double f;
        double g;
    };

    static Schedule linear();
    /// g = tau^p, f = 1 - tau^p
    static Schedule polynomial(double power);
    static Schedule tabulated(std::vector<Knot> knots);

    Schedule with_extra_term(ExtraTerm h) const;

    Kind kind() const noexcept { return kind_; }
    double power() const noexcept { return power_; }
    const std::vector<Knot>& knots() const noexcept { return knots_; }
    bool has_extra_term() const noexcept { return has_h_; }
    const ExtraTerm& extra_term() const noexcept { return h_; }

    double f(double tau) const;
    double g(double tau) const;
    /// Zero when no extra term is configured.
    double h(double tau) const;

    /// Integral of g over [0, upto], upto in [0, 1].
    double integral(double upto) const;

    /// Non-fatal observations made during construction (e.g. f < 0 somewhere).
    const std::vector<std::string>& notes() const noexcept { return notes_; }

    std::string name() const;

private:
    Schedule() = default;

    Kind kind_ = Kind::Linear;
    double power_ = 1.0;
    std::vector<Knot> knots_;
    bool has_h_ = false;
    ExtraTerm h_;
    std::vector<std::string> notes_;
};

/// Integral of g over [0, upto].
double schedule_integral(const Schedule& s, double upto);

}  // namespace teur
