#include <dqsvt/sve.hpp>

#include <cmath>
#include <sstream>

namespace dqsvt {

void SveProblem::validate() const {
    if (!(delta > 0.0 && delta <= 1.0)) throw InvalidInput("sve: delta must lie in (0, 1]");
    threshold_spec().validate();
    if (a.cols() != u.dimension()) throw ShapeError("sve: guide dimension does not match matrix columns");
    if (u.zeta() > delta * delta / 56.0) {
        std::ostringstream msg;
        msg << "sve: zeta = " << u.zeta() << " exceeds delta^2 / 56 = " << delta * delta / 56.0;
        throw ConfigError(msg.str());
    }
}

ThresholdSpec SveProblem::threshold_spec() const { return {t1, t2, theta1, theta2, delta * delta / 3.0}; }

const char* to_string(SveDecision d) noexcept { return d == SveDecision::kHasSv ? "HAS_SV" : "NO_SV"; }

SveResult decide_singular_interval(const SveProblem& p, const SveConfig& cfg) {
    p.validate();
    return decide_singular_interval(p, build_threshold(p.threshold_spec()), cfg);
}

SveResult decide_singular_interval(const SveProblem& p, const EvenPolynomial& poly, const SveConfig& cfg) {
    p.validate();
    const double d2 = p.delta * p.delta;
    SveResult out;
    out.eps = d2 / 7.0;
    out.threshold = d2 / 2.0;
    out.degree = poly.degree();

    const auto est = EstimatorConfig::make(out.eps, cfg.fail_prob, p.u.zeta(), cfg.seed, cfg.workers);
    out.run = estimate_bilinear(p.a, p.u.base(), p.u, poly, est);
    out.estimate = out.run.value;
    out.decision = out.estimate.real() > out.threshold ? SveDecision::kHasSv : SveDecision::kNoSv;

    if (std::abs(out.estimate.imag()) >= out.eps) {
        out.warnings.push_back("imaginary part of the estimate is not below eps");
    }
    const double low_band = d2 / 3.0 + out.eps;
    const double high_band = 2.0 * d2 / 3.0 - out.eps;
    if (out.estimate.real() > low_band && out.estimate.real() < high_band) {
        out.warnings.push_back("estimate lies between the promise bands; input may violate the promise");
    }
    return out;
}

}  // namespace dqsvt
