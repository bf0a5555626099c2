#include "teur/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "teur/errors.hpp"

namespace teur {

namespace {

constexpr double kBoundaryTol = 1e-12;

void require_unit(double tau, const char* what) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw InputError(std::string(what) + ": tau outside [0, 1]");
    }
}

// Index of the segment [k, k+1] containing tau.
template <class Knots>
std::size_t segment_of(const Knots& knots, double tau) {
    auto it = std::upper_bound(knots.begin(), knots.end(), tau,
                               [](double t, const auto& k) { return t < k.tau; });
    auto idx = static_cast<std::size_t>(std::distance(knots.begin(), it));
    if (idx == 0) return 0;
    return std::min(idx - 1, knots.size() - 2);
}

}  // namespace

ExtraTerm ExtraTerm::sine(double amplitude) {
    if (!std::isfinite(amplitude)) throw InputError("ExtraTerm: non-finite amplitude");
    ExtraTerm t;
    t.amplitude_ = amplitude;
    return t;
}

ExtraTerm ExtraTerm::tabulated(std::vector<Knot> knots) {
    if (knots.size() < 2) throw InputError("ExtraTerm: need at least two knots");
    for (std::size_t k = 1; k < knots.size(); ++k) {
        if (!(knots[k].tau > knots[k - 1].tau)) {
            throw InputError("ExtraTerm: knots must be strictly increasing in tau");
        }
    }
    if (std::abs(knots.front().tau) > kBoundaryTol || std::abs(knots.back().tau - 1.0) > kBoundaryTol) {
        throw InputError("ExtraTerm: knots must span [0, 1]");
    }
    if (std::abs(knots.front().value) > kBoundaryTol || std::abs(knots.back().value) > kBoundaryTol) {
        throw InputError("ExtraTerm: h(0) and h(1) must vanish");
    }
    ExtraTerm t;
    t.knots_ = std::move(knots);
    return t;
}

double ExtraTerm::operator()(double tau) const {
    if (knots_.empty()) return amplitude_ * std::sin(std::numbers::pi * tau);
    const auto k = segment_of(knots_, tau);
    const auto& a = knots_[k];
    const auto& b = knots_[k + 1];
    const double w = (tau - a.tau) / (b.tau - a.tau);
    return a.value + w * (b.value - a.value);
}

Schedule Schedule::linear() {
    Schedule s;
    s.kind_ = Kind::Linear;
    return s;
}

Schedule Schedule::polynomial(double power) {
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw InputError("Schedule: polynomial power must be positive");
    }
    Schedule s;
    s.kind_ = Kind::Polynomial;
    s.power_ = power;
    return s;
}

Schedule Schedule::tabulated(std::vector<Knot> knots) {
    if (knots.size() < 2) throw InputError("Schedule: tabulated form needs at least two knots");
    for (std::size_t k = 0; k < knots.size(); ++k) {
        const auto& kn = knots[k];
        if (!std::isfinite(kn.tau) || !std::isfinite(kn.f) || !std::isfinite(kn.g)) {
            throw InputError("Schedule: knot " + std::to_string(k) + " is not finite");
        }
        if (k > 0 && !(kn.tau > knots[k - 1].tau)) {
            throw InputError("Schedule: knot " + std::to_string(k) +
                             " does not increase in tau");
        }
        if (kn.g < 0.0) {
            throw InputError("Schedule: g is negative at knot " + std::to_string(k));
        }
    }
    const auto& first = knots.front();
    const auto& last = knots.back();
    if (std::abs(first.tau) > kBoundaryTol || std::abs(last.tau - 1.0) > kBoundaryTol) {
        throw InputError("Schedule: knots must span tau in [0, 1]");
    }
    if (std::abs(first.f - 1.0) > kBoundaryTol || std::abs(first.g) > kBoundaryTol) {
        throw InputError("Schedule: boundary values require f(0) = 1 and g(0) = 0");
    }
    if (std::abs(last.f) > kBoundaryTol || std::abs(last.g - 1.0) > kBoundaryTol) {
        throw InputError("Schedule: boundary values require f(1) = 0 and g(1) = 1");
    }
    Schedule s;
    s.kind_ = Kind::Tabulated;
    s.knots_ = std::move(knots);
    for (std::size_t k = 0; k < s.knots_.size(); ++k) {
        if (s.knots_[k].f < 0.0) {
            std::ostringstream os;
            os << "f is negative at knot " << k << " (tau = " << s.knots_[k].tau
               << ", f = " << s.knots_[k].f << ")";
            s.notes_.push_back(os.str());
        }
    }
    return s;
}

Schedule Schedule::with_extra_term(ExtraTerm h) const {
    Schedule s = *this;
    s.has_h_ = true;
    s.h_ = std::move(h);
    return s;
}

double Schedule::f(double tau) const {
    require_unit(tau, "Schedule::f");
    switch (kind_) {
        case Kind::Linear: return 1.0 - tau;
        case Kind::Polynomial: return 1.0 - std::pow(tau, power_);
        case Kind::Tabulated: {
            const auto k = segment_of(knots_, tau);
            const double w = (tau - knots_[k].tau) / (knots_[k + 1].tau - knots_[k].tau);
            return knots_[k].f + w * (knots_[k + 1].f - knots_[k].f);
        }
    }
    return 0.0;
}

double Schedule::g(double tau) const {
    require_unit(tau, "Schedule::g");
    switch (kind_) {
        case Kind::Linear: return tau;
        case Kind::Polynomial: return std::pow(tau, power_);
        case Kind::Tabulated: {
            const auto k = segment_of(knots_, tau);
            const double w = (tau - knots_[k].tau) / (knots_[k + 1].tau - knots_[k].tau);
            return knots_[k].g + w * (knots_[k + 1].g - knots_[k].g);
        }
    }
    return 0.0;
}

double Schedule::h(double tau) const {
    require_unit(tau, "Schedule::h");
    return has_h_ ? h_(tau) : 0.0;
}

double Schedule::integral(double upto) const {
    require_unit(upto, "Schedule::integral");
    if (upto == 0.0) return 0.0;
    if (kind_ == Kind::Tabulated) {
        // Trapezoid is exact on a piecewise-linear profile.
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
            const double a = knots_[k].tau;
            if (a >= upto) break;
            const double b = std::min(knots_[k + 1].tau, upto);
            acc += 0.5 * (b - a) * (g(a) + g(b));
        }
        return acc;
    }
    auto integrand = [this](double t) { return g(t); };
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, upto, 15, 1e-14, &err);
    return v;
}

std::string Schedule::name() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Linear: os << "linear"; break;
        case Kind::Polynomial: os << "poly:" << power_; break;
        case Kind::Tabulated: os << "tabulated[" << knots_.size() << "]"; break;
    }
    if (has_h_) os << "+h";
    return os.str();
}

double schedule_integral(const Schedule& s, double upto) { return s.integral(upto); }

}  // namespace teur
