#include <dqsvt/polynomial.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dqsvt {

namespace {

// Sup of f over [a, b]: grid scan, then golden-section refinement around the
// best few local maxima.
template <class F>
double refined_max(const F& f, double a, double b, int points) {
    if (b <= a) return f(a);
    const double h = (b - a) / points;
    std::vector<double> v(static_cast<std::size_t>(points) + 1);
    for (int i = 0; i <= points; ++i) v[i] = f(i == points ? b : a + h * i);
    double best = *std::max_element(v.begin(), v.end());

    std::vector<int> peaks;
    for (int i = 0; i <= points; ++i) {
        const bool left_ok = i == 0 || v[i] >= v[i - 1];
        const bool right_ok = i == points || v[i] >= v[i + 1];
        if (left_ok && right_ok) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](int x, int y) { return v[x] > v[y]; });
    if (peaks.size() > 8) peaks.resize(8);

    constexpr double kInvPhi = 0.6180339887498949;
    for (int i : peaks) {
        double lo = std::max(a, a + h * (i - 1));
        double hi = std::min(b, a + h * (i + 1));
        double x1 = hi - kInvPhi * (hi - lo);
        double x2 = lo + kInvPhi * (hi - lo);
        double f1 = f(x1);
        double f2 = f(x2);
        for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kInvPhi * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kInvPhi * (hi - lo);
                f1 = f(x1);
            }
            best = std::max({best, f1, f2});
        }
    }
    return best;
}

// Uniform grid over [a, b] with `points` intervals; a single point when a == b.
template <class F>
void for_grid(double a, double b, int points, const F& visit) {
    if (b <= a) {
        visit(a);
        return;
    }
    const double h = (b - a) / points;
    for (int i = 0; i <= points; ++i) visit(i == points ? b : a + h * i);
}

int next_odd_rung(int n) {
    int next = static_cast<int>(std::ceil(n * 1.25));
    if (next % 2 == 0) ++next;
    return std::max(next, n + 2);
}

}  // namespace

// ---------------------------------------------------------------------------
// Chebyshev helpers

double chebyshev_eval(std::span<const double> c, double y) {
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const double b0 = c[k] + 2.0 * y * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return (c.empty() ? 0.0 : c[0]) + y * b1 - b2;
}

std::vector<double> chebyshev_interpolate(const std::function<double(double)>& f, int n) {
    if (n < 0) throw InvalidInput("chebyshev_interpolate: negative degree");
    const int m = n + 1;
    // cos(pi * q / (2m)) for q in [0, 4m); every basis value is a table entry.
    std::vector<double> table(4 * static_cast<std::size_t>(m));
    for (std::size_t q = 0; q < table.size(); ++q) table[q] = std::cos(std::numbers::pi * q / (2.0 * m));
    std::vector<double> values(m);
    for (int j = 0; j < m; ++j) values[j] = f(table[2 * j + 1]);

    std::vector<double> c(m, 0.0);
    const std::size_t period = table.size();
    for (int k = 0; k < m; ++k) {
        double acc = 0.0;
        std::size_t q = static_cast<std::size_t>(k) % period;
        const std::size_t step = (2 * static_cast<std::size_t>(k)) % period;
        for (int j = 0; j < m; ++j) {
            acc += values[j] * table[q];
            q += step;
            if (q >= period) q -= period;
        }
        c[k] = acc * (k == 0 ? 1.0 : 2.0) / m;
    }
    return c;
}

// ---------------------------------------------------------------------------
// EvenPolynomial

EvenPolynomial::EvenPolynomial(Basis basis, std::vector<double> coeffs) : basis_(basis), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidInput("EvenPolynomial: no coefficients");
    for (double a : coeffs_) {
        if (!std::isfinite(a)) throw InvalidInput("EvenPolynomial: non-finite coefficient");
    }
}

double EvenPolynomial::operator()(double x) const {
    const double z = x * x;
    if (basis_ == Basis::kChebyshev) return chebyshev_eval(coeffs_, 2.0 * z - 1.0);
    double acc = 0.0;
    for (std::size_t r = coeffs_.size(); r-- > 0;) acc = acc * z + coeffs_[r];
    return acc;
}

EvenPolynomial EvenPolynomial::to_monomial(std::vector<std::string>* warnings) const {
    if (warnings && degree() > kMonomialWarnDegree) {
        warnings->push_back("monomial conversion of degree " + std::to_string(degree()) +
                            " is ill-conditioned (limit " + std::to_string(kMonomialWarnDegree) + ")");
    }
    if (basis_ == Basis::kMonomial) return *this;
    // T_k(2z - 1) as polynomials in z = x^2.
    const std::size_t n = coeffs_.size();
    std::vector<double> out(n, 0.0);
    std::vector<double> prev(n, 0.0);
    std::vector<double> cur(n, 0.0);
    prev[0] = 1.0;
    out[0] += coeffs_[0];
    if (n > 1) {
        cur[0] = -1.0;
        cur[1] = 2.0;
        for (std::size_t r = 0; r < n; ++r) out[r] += coeffs_[1] * cur[r];
    }
    for (std::size_t k = 2; k < n; ++k) {
        std::vector<double> next(n, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            const double shifted = r > 0 ? cur[r - 1] : 0.0;
            next[r] = 4.0 * shifted - 2.0 * cur[r] - prev[r];
        }
        for (std::size_t r = 0; r < n; ++r) out[r] += coeffs_[k] * next[r];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return monomial(std::move(out));
}

EvenPolynomial EvenPolynomial::to_chebyshev() const {
    if (basis_ == Basis::kChebyshev) return *this;
    const auto& a = coeffs_;
    auto r_of_y = [&a](double y) {
        const double z = 0.5 * (1.0 + y);
        double acc = 0.0;
        for (std::size_t r = a.size(); r-- > 0;) acc = acc * z + a[r];
        return acc;
    };
    return chebyshev(chebyshev_interpolate(r_of_y, half_degree()));
}

// ---------------------------------------------------------------------------
// OddPolynomial

OddPolynomial::OddPolynomial(std::vector<double> odd_coefficients, double half_width)
    : coeffs_(std::move(odd_coefficients)), half_width_(half_width) {
    if (coeffs_.empty()) throw InvalidInput("OddPolynomial: no coefficients");
    if (!(half_width_ > 0.0)) throw InvalidInput("OddPolynomial: half width must be positive");
}

double OddPolynomial::operator()(double x) const {
    const double t = x / half_width_;
    // Clenshaw over sum_j c_j T_j(t) with c_(2k+1) = coeffs_[k] and zero even terms.
    const std::size_t top = 2 * coeffs_.size() - 1;
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t j = top; j >= 1; --j) {
        const double cj = (j % 2 == 1) ? coeffs_[(j - 1) / 2] : 0.0;
        const double b0 = cj + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2;
}

// ---------------------------------------------------------------------------
// Sign approximation

SignBoxReport check_sign_boxes(const OddPolynomial& p, double eta, double xi, int grid) {
    SignBoxReport r;
    r.sup_excess = -1.0;
    r.upper_excess = -1.0;
    r.lower_excess = -1.0;
    for_grid(-2.0, 2.0, grid, [&](double x) { r.sup_excess = std::max(r.sup_excess, std::abs(p(x)) - 1.0); });
    for_grid(eta, 2.0, grid, [&](double x) {
        const double v = p(x);
        r.upper_excess = std::max({r.upper_excess, (1.0 - xi) - v, v - 1.0});
    });
    for_grid(-2.0, -eta, grid, [&](double x) {
        const double v = p(x);
        r.lower_excess = std::max({r.lower_excess, -1.0 - v, v - (-1.0 + xi)});
    });
    return r;
}

OddPolynomial build_sign_approx(double eta, double xi) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidInput("build_sign_approx: eta must be positive");
    if (!(xi > 0.0 && xi < 0.5)) throw InvalidInput("build_sign_approx: xi must lie in (0, 1/2)");
    constexpr double kHalfWidth = 2.0;
    constexpr double kSteepness = 0.7;
    const double gap = std::min(eta / kHalfWidth, 1.0);

    for (int n = 11; n <= kSignMaxDegree; n = next_odd_rung(n)) {
        const double k = kSteepness * std::sqrt(n / gap);
        if (std::erfc(k * gap) > 2.0 * xi) continue;

        auto full = chebyshev_interpolate([k](double t) { return std::erf(k * t); }, n);
        std::vector<double> odd;
        odd.reserve(full.size() / 2);
        for (std::size_t j = 1; j < full.size(); j += 2) odd.push_back(full[j]);
        OddPolynomial raw(odd, kHalfWidth);

        const int points = std::max(20000, 8 * n);
        const double hi = refined_max([&raw](double x) { return raw(x); }, 0.0, kHalfWidth, points);
        const double lo = refined_max([&raw](double x) { return -raw(x); }, 0.0, kHalfWidth, points);
        const double scale = 1.0 / (std::max(hi, lo) * (1.0 + 1e-13));
        for (auto& b : odd) b *= scale;
        OddPolynomial p(std::move(odd), kHalfWidth);

        if (check_sign_boxes(p, eta, xi).pass()) return p;
    }
    std::ostringstream msg;
    msg << "build_sign_approx: no degree up to " << kSignMaxDegree << " certifies eta=" << eta << " xi=" << xi;
    throw ConstructionError(msg.str());
}

// ---------------------------------------------------------------------------
// Threshold polynomial

void ThresholdSpec::validate() const {
    constexpr double kSlack = 1e-12;
    const bool finite = std::isfinite(t1) && std::isfinite(t2) && std::isfinite(theta1) && std::isfinite(theta2) &&
                        std::isfinite(chi);
    std::ostringstream msg;
    msg << "threshold spec (t1=" << t1 << ", t2=" << t2 << ", theta1=" << theta1 << ", theta2=" << theta2
        << ", chi=" << chi << "): ";
    if (!finite) throw InvalidInput(msg.str() + "non-finite parameter");
    if (!(theta1 > 0.0 && theta2 > 0.0)) throw InvalidInput(msg.str() + "thetas must be positive");
    if (theta1 > t1 + kSlack || t1 > t2 || t2 > 1.0 - theta2 + kSlack || t1 < 0.0 || t2 > 1.0) {
        throw InvalidInput(msg.str() + "need theta1 <= t1 <= t2 <= 1 - theta2");
    }
    if (!(chi > 0.0 && chi < 1.0)) throw InvalidInput(msg.str() + "chi must lie in (0, 1)");
}

double ThresholdConstruction::q(double x) const {
    const auto& s = spec;
    return (1.0 - xi) * 0.5 * (left(x - s.t1 + s.theta1 / 2.0) + right(-x + s.t2 + s.theta2 / 2.0)) + xi;
}

ThresholdConstruction build_threshold_construction(const ThresholdSpec& spec) {
    spec.validate();
    const double xi = spec.chi / 3.0;
    OddPolynomial left = build_sign_approx(spec.theta1 / 2.0, xi);
    OddPolynomial right = spec.theta2 == spec.theta1 ? left : build_sign_approx(spec.theta2 / 2.0, xi);

    ThresholdConstruction out{spec, xi, std::move(left), std::move(right), 0.0, EvenPolynomial()};
    const int odd_degree = std::max(out.left.degree(), out.right.degree());
    const int half = (odd_degree - 1) / 2;

    // Q(x) + Q(-x) is a polynomial of degree `half` in y = 2x^2 - 1.
    auto symmetric = [&out](double y) {
        const double x = std::sqrt(std::max(0.0, 0.5 * (1.0 + y)));
        return out.q(x) + out.q(-x);
    };
    auto c = chebyshev_interpolate(symmetric, half);
    const auto unscaled = EvenPolynomial::chebyshev(c);
    const double sup = refined_max([&unscaled](double x) { return unscaled(x); }, 0.0, 1.0,
                                   std::max(20000, 16 * half));
    out.normalization = std::max(1.0 + xi, sup * (1.0 + 1e-13));
    for (auto& v : c) v /= out.normalization;
    out.poly = EvenPolynomial::chebyshev(std::move(c));

    const auto report = verify_threshold(out.poly, spec);
    if (!report.pass()) {
        throw ConstructionError("build_threshold: certification failed in region " + report.failing_region());
    }
    return out;
}

EvenPolynomial build_threshold(const ThresholdSpec& spec) { return build_threshold_construction(spec).poly; }

std::string ThresholdReport::failing_region() const {
    if (pass()) return {};
    if (sup_excess >= inner_violation && sup_excess >= outer_violation) return "sup [-1,1]";
    if (inner_violation >= outer_violation) return "inner [t1,t2]";
    return "outer [0,t1-theta1]u[t2+theta2,1]";
}

ThresholdReport verify_threshold(const EvenPolynomial& p, const ThresholdSpec& spec, int grid) {
    if (grid < 1000) throw InvalidInput("verify_threshold: grid must have at least 1000 points");
    ThresholdReport r;
    r.sup_excess = -1.0;
    r.inner_violation = -1.0;
    r.outer_violation = -1.0;
    for_grid(-1.0, 1.0, grid, [&](double x) { r.sup_excess = std::max(r.sup_excess, std::abs(p(x)) - 1.0); });
    for_grid(spec.t1, spec.t2, grid, [&](double x) {
        const double v = p(x);
        r.inner_violation = std::max({r.inner_violation, (1.0 - spec.chi) - v, v - 1.0});
    });
    auto outer = [&](double x) {
        const double v = p(x);
        r.outer_violation = std::max({r.outer_violation, -v, v - spec.chi});
    };
    for_grid(0.0, std::max(0.0, spec.t1 - spec.theta1), grid, outer);
    for_grid(std::min(1.0, spec.t2 + spec.theta2), 1.0, grid, outer);
    return r;
}

}  // namespace dqsvt
