#include "qsg/quasi_semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "qsg/errors.hpp"
#include "qsg/numkernel.hpp"

namespace qsg {

namespace {

// Sample times used to probe whether a user-supplied scale / generator map
// actually depends on t.
constexpr std::array<double, 6> kProbeTimes{0.0, 0.3, 0.7, 1.1, 1.9, 2.5};

struct PairKey {
    double a = 0.0;
    double b = 0.0;
    bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
        const std::size_t h1 = std::hash<double>{}(k.a);
        const std::size_t h2 = std::hash<double>{}(k.b);
        return h1 ^ (h2 * 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};

CMatrix rk4_propagate(const MatrixMap& afun, double t, double s, double step) {
    const CMatrix a0 = afun(t);
    const std::size_t n = a0.rows();
    CMatrix u = CMatrix::identity(n);
    if (s == 0.0) return u;
    const auto nsteps = static_cast<std::size_t>(std::ceil(s / step));
    const double h = s / static_cast<double>(nsteps);
    const Complex h2{0.5 * h, 0.0};
    const Complex h6{h / 6.0, 0.0};
    for (std::size_t i = 0; i < nsteps; ++i) {
        const double x = t + static_cast<double>(i) * h;
        const CMatrix k1 = afun(x) * u;
        const CMatrix amid = afun(x + 0.5 * h);
        const CMatrix k2 = amid * (u + h2 * k1);
        const CMatrix k3 = amid * (u + h2 * k2);
        const CMatrix k4 = afun(x + h) * (u + Complex{h, 0.0} * k3);
        CMatrix incr = k1;
        incr += k4;
        incr += 2.0 * k2;
        incr += 2.0 * k3;
        u += h6 * incr;
    }
    return u;
}

}  // namespace

struct QuasiSemigroup::Cache {
    std::mutex mu;
    std::unordered_map<PairKey, CMatrix, PairKeyHash> eval;
    std::unordered_map<double, double> g;
    std::unordered_map<double, double> evo_sup;
};

QuasiSemigroup::QuasiSemigroup(Backend backend, ToleranceContext tol, std::string description)
    : backend_(std::move(backend)),
      tol_(tol),
      description_(std::move(description)),
      cache_(std::make_shared<Cache>()) {
    tol_.validate();

    if (const auto* c = std::get_if<Constant>(&backend_)) {
        require_square(c->generator, "QuasiSemigroup(Constant)");
        require_finite(c->generator, "QuasiSemigroup(Constant)");
        dim_ = c->generator.rows();
        generator_norm_ = spectral_norm(c->generator);
        constant_generator_ = true;
    } else if (const auto* sc = std::get_if<Scaled>(&backend_)) {
        require_square(sc->generator, "QuasiSemigroup(Scaled)");
        require_finite(sc->generator, "QuasiSemigroup(Scaled)");
        dim_ = sc->generator.rows();
        generator_norm_ = spectral_norm(sc->generator);
        const double a0 = sc->scale(0.0);
        bool constant = true;
        for (const double u : kProbeTimes) {
            const double au = sc->scale(u);
            if (!(au > 0.0)) {
                throw DomainError("QuasiSemigroup(Scaled): the scale must be positive");
            }
            if (std::abs(au - a0) > 1e-12 * (1.0 + std::abs(a0))) constant = false;
        }
        constant_generator_ = constant;
    } else {
        const auto& ev = std::get<Evolution>(backend_);
        const CMatrix a0 = ev.generator_fun(0.0);
        require_square(a0, "QuasiSemigroup(Evolution)");
        require_finite(a0, "QuasiSemigroup(Evolution)");
        dim_ = a0.rows();
        bool constant = true;
        for (const double u : kProbeTimes) {
            CMatrix au = ev.generator_fun(u);
            require_same_shape(au, a0, "QuasiSemigroup(Evolution)");
            au -= a0;
            if (au.max_abs() > 1e-12 * (1.0 + a0.max_abs())) constant = false;
        }
        constant_generator_ = constant;

        // Calibrate the fixed RK4 step: halve until another halving moves the
        // probe solutions by no more than a quarter of ode_tol.
        double step = ev.step_hint > 0.0 ? ev.step_hint : 0.05;
        for (const auto& [pt, ps] : std::array<std::pair<double, double>, 2>{{{0.0, 2.0}, {1.0, 2.0}}}) {
            for (int halvings = 0; halvings < 16; ++halvings) {
                CMatrix coarse = rk4_propagate(ev.generator_fun, pt, ps, step);
                coarse -= rk4_propagate(ev.generator_fun, pt, ps, 0.5 * step);
                if (spectral_norm(coarse) <= 0.25 * tol_.ode_tol) break;
                step *= 0.5;
            }
        }
        evo_step_ = step;
    }

    if (dim_ == 0) throw DimensionError("QuasiSemigroup: dimension must be positive");
}

BackendKind QuasiSemigroup::kind() const noexcept {
    if (std::holds_alternative<Constant>(backend_)) return BackendKind::Constant;
    if (std::holds_alternative<Scaled>(backend_)) return BackendKind::Scaled;
    return BackendKind::Evolution;
}

double QuasiSemigroup::g(double x) const {
    const auto& sc = std::get<Scaled>(backend_);
    if (x == 0.0) return 0.0;
    {
        std::lock_guard lock(cache_->mu);
        if (auto it = cache_->g.find(x); it != cache_->g.end()) return it->second;
    }
    const double value = quad_scalar(sc.scale, 0.0, x, tol_.quad_tol);
    std::lock_guard lock(cache_->mu);
    return cache_->g.emplace(x, value).first->second;
}

double QuasiSemigroup::evolution_norm_sup(double tau) const {
    const auto& ev = std::get<Evolution>(backend_);
    {
        std::lock_guard lock(cache_->mu);
        if (auto it = cache_->evo_sup.find(tau); it != cache_->evo_sup.end()) return it->second;
    }
    double sup = 0.0;
    const int samples = 32;
    for (int i = 0; i <= samples; ++i) {
        const double u = tau * static_cast<double>(i) / samples;
        sup = std::max(sup, spectral_norm(ev.generator_fun(u)));
    }
    std::lock_guard lock(cache_->mu);
    return cache_->evo_sup.emplace(tau, sup).first->second;
}

double QuasiSemigroup::growth_bound(double tau) const {
    if (tau < 0.0) throw DomainError("growth_bound: negative argument");
    if (std::holds_alternative<Constant>(backend_)) {
        return std::exp(generator_norm_ * tau);
    }
    if (std::holds_alternative<Scaled>(backend_)) {
        const double gbar = std::max(tau, g(tau));
        return std::exp(generator_norm_ * gbar);
    }
    return std::exp(tau * evolution_norm_sup(tau));
}

CMatrix QuasiSemigroup::eval_raw(double t, double s) const {
    if (const auto* c = std::get_if<Constant>(&backend_)) {
        return expm(Complex{s, 0.0} * c->generator);
    }
    if (const auto* sc = std::get_if<Scaled>(&backend_)) {
        const double delta = g(t + s) - g(t);
        return expm(Complex{delta, 0.0} * sc->generator);
    }
    const auto& ev = std::get<Evolution>(backend_);
    return rk4_propagate(ev.generator_fun, t, s, evo_step_);
}

FiniteOperator QuasiSemigroup::eval(double t, double s) const {
    if (t < 0.0 || s < 0.0) throw DomainError("QuasiSemigroup::eval: negative time argument");
    if (s == 0.0) return FiniteOperator{CMatrix::identity(dim_), tol_};

    // Constant backends do not depend on t; collapsing the key widens cache reuse.
    const PairKey key{std::holds_alternative<Constant>(backend_) ? 0.0 : t, s};
    {
        std::lock_guard lock(cache_->mu);
        if (auto it = cache_->eval.find(key); it != cache_->eval.end()) {
            return FiniteOperator{it->second, tol_};
        }
    }
    CMatrix value = eval_raw(t, s);
    std::lock_guard lock(cache_->mu);
    return FiniteOperator{cache_->eval.emplace(key, std::move(value)).first->second, tol_};
}

FiniteOperator QuasiSemigroup::generator(double t) const {
    if (t < 0.0) throw DomainError("QuasiSemigroup::generator: negative time");
    if (const auto* c = std::get_if<Constant>(&backend_)) {
        return FiniteOperator{c->generator, tol_};
    }
    if (const auto* sc = std::get_if<Scaled>(&backend_)) {
        return FiniteOperator{Complex{sc->scale(t), 0.0} * sc->generator, tol_};
    }
    const auto& ev = std::get<Evolution>(backend_);
    CMatrix a = ev.generator_fun(t);
    require_square(a, "QuasiSemigroup::generator");
    require_finite(a, "QuasiSemigroup::generator");
    return FiniteOperator{std::move(a), tol_};
}

GeneratorEstimate QuasiSemigroup::estimate_generator(double t, double h) const {
    if (!(h > 0.0)) throw DomainError("estimate_generator: step must be positive");
    if (t < 0.0) throw DomainError("estimate_generator: negative time");

    const CMatrix id = CMatrix::identity(dim_);
    const Complex inv{1.0 / h, 0.0};

    GeneratorEstimate est;
    est.t = t;
    est.h = h;
    est.forward = inv * (eval(t, h).matrix - id);
    if (t > 0.0 && t - h >= 0.0) {
        est.shifted = inv * (eval(t - h, h).matrix - id);
        est.discrepancy = spectral_norm(est.forward - *est.shifted);
    }
    return est;
}

std::vector<AxiomResidual> check_axioms(const QuasiSemigroup& q,
                                        std::span<const std::array<double, 3>> grid) {
    if (grid.empty()) throw DomainError("check_axioms: empty grid");
    constexpr double kContinuityEps = 1e-6;
    std::vector<AxiomResidual> out;
    out.reserve(grid.size());
    for (const auto& [t, s, r] : grid) {
        if (t < 0.0 || s < 0.0 || r < 0.0) {
            throw DomainError("check_axioms: grid coordinates must be nonnegative");
        }
        AxiomResidual res;
        res.t = t;
        res.s = s;
        res.r = r;
        const CMatrix lhs = q.eval(t, s + r).matrix;
        const CMatrix rhs = q.eval(t + r, s).matrix * q.eval(t, r).matrix;
        res.cocycle = spectral_norm(lhs - rhs);
        res.continuity =
            spectral_norm(q.eval(t, kContinuityEps).matrix - CMatrix::identity(q.dim()));
        res.bound_slack = q.growth_bound(t + s) - spectral_norm(q.eval(t, s).matrix);
        out.push_back(std::move(res));
    }
    return out;
}

double check_commutation(const QuasiSemigroup& q, double t, double t0, double s0) {
    if (t < 0.0 || t0 < 0.0 || s0 < 0.0) {
        throw DomainError("check_commutation: negative argument");
    }
    const CMatrix r = q.eval(t0, s0).matrix;
    const CMatrix a = q.generator(t).matrix;
    return spectral_norm(r * a - a * r);
}

double check_integral_equation(const QuasiSemigroup& q, double t, double s) {
    if (t < 0.0 || s < 0.0) throw DomainError("check_integral_equation: negative argument");
    const CMatrix integral = quad_operator(
        [&](double h) { return q.generator(t + h).matrix * q.eval(t, h).matrix; }, 0.0, s,
        q.tol().quad_tol);
    CMatrix residual = q.eval(t, s).matrix;
    residual -= CMatrix::identity(q.dim());
    residual -= integral;
    return spectral_norm(residual);
}

std::vector<double> check_averaging(const QuasiSemigroup& q, double t,
                                    std::span<const double> s_values) {
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        if (!(s_values[i] > 0.0)) throw DomainError("check_averaging: s values must be positive");
        if (i > 0 && !(s_values[i] < s_values[i - 1])) {
            throw DomainError("check_averaging: s values must be strictly decreasing");
        }
    }
    std::vector<double> out;
    out.reserve(s_values.size());
    const CMatrix id = CMatrix::identity(q.dim());
    for (const double s : s_values) {
        const CMatrix mean =
            Complex{1.0 / s, 0.0} *
            quad_operator([&](double h) { return q.eval(t, h).matrix; }, 0.0, s, q.tol().quad_tol);
        out.push_back(spectral_norm(mean - id));
    }
    return out;
}

}  // namespace qsg
