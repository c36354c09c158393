#include "deleeuw/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "deleeuw/error.hpp"
#include "deleeuw/quadrature.hpp"

namespace deleeuw {

const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::Continuous: return "continuous";
    case Regularity::GRegulated: return "g_regulated";
    case Regularity::Measurable: return "measurable";
  }
  return "unknown";
}

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

Regularity worst(Regularity a, Regularity b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt(cplx v) {
  if (v.imag() == 0.0) return fmt(v.real());
  return "(" + fmt(v.real()) + "," + fmt(v.imag()) + ")";
}

spec::Symbol1D dilate_spec(const spec::Symbol1D& s, double t) {
  return std::visit(
      [t](const auto& v) -> spec::Symbol1D {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, spec::Gaussian1>) {
          return spec::Gaussian1{v.sigma / t};
        } else if constexpr (std::is_same_v<T, spec::Phase1>) {
          return spec::Phase1{v.a * t};
        } else if constexpr (std::is_same_v<T, spec::Cutoff1>) {
          return spec::Cutoff1{v.cutoff / t};
        } else {
          return v;
        }
      },
      s);
}

std::optional<spec::Symbol2D> dilate_spec(const spec::Symbol2D& s, double t) {
  return std::visit(
      [t](const auto& v) -> std::optional<spec::Symbol2D> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, spec::Product>) {
          return spec::Product{dilate_spec(v.m1, t), dilate_spec(v.m2, t)};
        } else if constexpr (std::is_same_v<T, spec::Gaussian2D>) {
          return spec::Gaussian2D{v.sigma / t};
        } else if constexpr (std::is_same_v<T, spec::Shift>) {
          return spec::Shift{v.a * t, v.b * t};
        } else if constexpr (std::is_same_v<T, spec::Table>) {
          return std::nullopt;
        } else {
          return v;  // constant and sign_alpha are dilation invariant
        }
      },
      s);
}

}  // namespace

Symbol1D::Symbol1D(std::function<cplx(double)> rule, double bound, Regularity regularity, std::string id)
    : rule_(std::move(rule)), bound_(bound), regularity_(regularity), id_(std::move(id)) {
  if (!(bound >= 0.0) || !std::isfinite(bound)) throw DomainError("symbol bound must be finite and >= 0");
}

Symbol1D make_symbol_1d(const spec::Symbol1D& s) {
  return std::visit(
      [](const auto& v) -> Symbol1D {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, spec::Constant1>) {
          require_finite(v.value.real(), "constant");
          require_finite(v.value.imag(), "constant");
          const cplx c = v.value;
          return Symbol1D([c](double) { return c; }, std::abs(c), Regularity::Continuous, "constant(" + fmt(c) + ")");
        } else if constexpr (std::is_same_v<T, spec::Gaussian1>) {
          if (!(v.sigma > 0.0) || !std::isfinite(v.sigma)) throw DomainError("gaussian sigma must be positive and finite");
          const double s2 = v.sigma * v.sigma;
          return Symbol1D([s2](double xi) { return cplx(std::exp(-xi * xi / s2)); }, 1.0, Regularity::Continuous,
                          "gaussian(" + fmt(v.sigma) + ")");
        } else if constexpr (std::is_same_v<T, spec::Phase1>) {
          require_finite(v.a, "phase shift");
          const double a = v.a;
          return Symbol1D([a](double xi) { return std::polar(1.0, 2.0 * kPi * a * xi); }, 1.0, Regularity::Continuous,
                          "phase(" + fmt(a) + ")");
        } else if constexpr (std::is_same_v<T, spec::Sign1>) {
          return Symbol1D([](double xi) { return cplx(sign(xi)); }, 1.0, Regularity::GRegulated, "sign");
        } else {
          if (!(v.cutoff >= 0.0) || !std::isfinite(v.cutoff)) throw DomainError("cutoff must be finite and >= 0");
          const double c = v.cutoff;
          return Symbol1D([c](double xi) { return cplx(std::abs(xi) <= c ? 1.0 : 0.0); }, 1.0, Regularity::Measurable,
                          "cutoff(" + fmt(c) + ")");
        }
      },
      s);
}

Symbol2D::Symbol2D(std::function<cplx(double, double)> rule, double bound, Regularity regularity, std::string id)
    : rule_(std::move(rule)), bound_(bound), regularity_(regularity), id_(std::move(id)) {
  if (!(bound >= 0.0) || !std::isfinite(bound)) throw DomainError("symbol bound must be finite and >= 0");
}

bool Symbol2D::is_shift() const {
  return description_ && std::holds_alternative<spec::Shift>(*description_);
}

Symbol2D& Symbol2D::with_factors(Symbol1D m1, Symbol1D m2) {
  factors_.emplace(std::move(m1), std::move(m2));
  return *this;
}

Symbol2D& Symbol2D::with_ridge(Symbol1D profile, double alpha) {
  ridge_.emplace(std::move(profile), alpha);
  return *this;
}

Symbol2D& Symbol2D::with_description(spec::Symbol2D d) {
  description_ = std::move(d);
  return *this;
}

Symbol2D& Symbol2D::with_flag(std::string flag) {
  flags_.push_back(std::move(flag));
  return *this;
}

Symbol2D Symbol2D::dilated(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("symbol dilation needs t > 0");
  if (t == 1.0) return *this;
  if (description_) {
    if (auto d = dilate_spec(*description_, t)) {
      Symbol2D out = make_symbol(*d);
      out.flags_ = flags_;
      return out;
    }
  }
  auto rule = rule_;
  Symbol2D out([rule, t](double xi, double eta) { return rule(t * xi, t * eta); }, bound_, regularity_,
               id_ + "@t=" + fmt(t));
  out.flags_ = flags_;
  if (factors_) {
    auto a = factors_->first;
    auto b = factors_->second;
    out.with_factors(Symbol1D([a, t](double xi) { return a(t * xi); }, a.bound(), a.regularity(), a.id()),
                     Symbol1D([b, t](double eta) { return b(t * eta); }, b.bound(), b.regularity(), b.id()));
  }
  if (ridge_) {
    auto prof = ridge_->first;
    out.with_ridge(Symbol1D([prof, t](double u) { return prof(t * u); }, prof.bound(), prof.regularity(), prof.id()),
                   ridge_->second);
  }
  return out;
}

Symbol2D make_symbol(const spec::Symbol2D& s) {
  return std::visit(
      [&s](const auto& v) -> Symbol2D {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, spec::Constant>) {
          auto m1 = make_symbol_1d(spec::Constant1{v.value});
          const cplx c = v.value;
          Symbol2D out([c](double, double) { return c; }, std::abs(c), Regularity::Continuous,
                       "constant(" + fmt(c) + ")");
          out.with_factors(m1, make_symbol_1d(spec::Constant1{1.0})).with_description(s);
          return out;
        } else if constexpr (std::is_same_v<T, spec::Product>) {
          auto m1 = make_symbol_1d(v.m1);
          auto m2 = make_symbol_1d(v.m2);
          Symbol2D out([m1, m2](double xi, double eta) { return m1(xi) * m2(eta); }, m1.bound() * m2.bound(),
                       worst(m1.regularity(), m2.regularity()), "product(" + m1.id() + "," + m2.id() + ")");
          out.with_factors(m1, m2).with_description(s);
          return out;
        } else if constexpr (std::is_same_v<T, spec::SignAlpha>) {
          require_finite(v.alpha, "alpha");
          const double a = v.alpha;
          Symbol2D out([a](double xi, double eta) { return cplx(sign(xi + a * eta)); }, 1.0, Regularity::GRegulated,
                       "sign_alpha(" + fmt(a) + ")");
          out.with_ridge(make_symbol_1d(spec::Sign1{}), a).with_description(s);
          if (a == 0.0 || a == 1.0) out.with_flag("alpha_outside_bilinear_hilbert_range");
          return out;
        } else if constexpr (std::is_same_v<T, spec::Gaussian2D>) {
          auto g = make_symbol_1d(spec::Gaussian1{v.sigma});
          const double s2 = v.sigma * v.sigma;
          Symbol2D out([s2](double xi, double eta) { return cplx(std::exp(-(xi * xi + eta * eta) / s2)); }, 1.0,
                       Regularity::Continuous, "gaussian2d(" + fmt(v.sigma) + ")");
          out.with_factors(g, g).with_description(s);
          return out;
        } else if constexpr (std::is_same_v<T, spec::Shift>) {
          auto pa = make_symbol_1d(spec::Phase1{v.a});
          auto pb = make_symbol_1d(spec::Phase1{v.b});
          const double a = v.a;
          const double b = v.b;
          Symbol2D out([a, b](double xi, double eta) { return std::polar(1.0, 2.0 * kPi * (a * xi + b * eta)); }, 1.0,
                       Regularity::Continuous, "shift(" + fmt(a) + "," + fmt(b) + ")");
          out.with_factors(pa, pb).with_description(s);
          return out;
        } else {
          const auto& xs = v.xi;
          const auto& ys = v.eta;
          if (xs.size() < 2 || ys.size() < 2) throw DomainError("symbol table needs at least 2x2 nodes");
          if (v.values.size() != ys.size()) throw DomainError("symbol table row count must match eta nodes");
          double bound = 0.0;
          for (const auto& row : v.values) {
            if (row.size() != xs.size()) throw DomainError("symbol table column count must match xi nodes");
            for (const auto& z : row) {
              if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("symbol table values must be finite");
              bound = std::max(bound, std::abs(z));
            }
          }
          for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1])) throw DomainError("symbol table xi nodes must increase");
          for (std::size_t j = 1; j < ys.size(); ++j)
            if (!(ys[j] > ys[j - 1])) throw DomainError("symbol table eta nodes must increase");
          auto table = std::make_shared<const spec::Table>(v);
          auto rule = [table](double xi, double eta) -> cplx {
            const auto& X = table->xi;
            const auto& Y = table->eta;
            if (xi < X.front() || xi > X.back() || eta < Y.front() || eta > Y.back()) return {};
            const auto i = std::min<std::size_t>(
                static_cast<std::size_t>(std::upper_bound(X.begin(), X.end(), xi) - X.begin()), X.size() - 1);
            const auto j = std::min<std::size_t>(
                static_cast<std::size_t>(std::upper_bound(Y.begin(), Y.end(), eta) - Y.begin()), Y.size() - 1);
            const double u = (xi - X[i - 1]) / (X[i] - X[i - 1]);
            const double w = (eta - Y[j - 1]) / (Y[j] - Y[j - 1]);
            const auto& V = table->values;
            return (1 - u) * (1 - w) * V[j - 1][i - 1] + u * (1 - w) * V[j - 1][i] + (1 - u) * w * V[j][i - 1] +
                   u * w * V[j][i];
          };
          Symbol2D out(rule, bound, v.regularity,
                       "table(" + std::to_string(xs.size()) + "x" + std::to_string(ys.size()) + ")");
          out.with_description(s);
          return out;
        }
      },
      s);
}

DiscreteSymbol::DiscreteSymbol(int k1_min, int k1_max, int k2_min, int k2_max)
    : k1_min_(k1_min), k1_max_(k1_max), k2_min_(k2_min), k2_max_(k2_max) {
  if (k1_max < k1_min || k2_max < k2_min) throw DomainError("discrete symbol window is empty");
  values_.assign(static_cast<std::size_t>(k1_max - k1_min + 1) * static_cast<std::size_t>(k2_max - k2_min + 1), cplx{});
}

DiscreteSymbol DiscreteSymbol::from_symbol(const Symbol2D& m, double t, int k1_max, int k2_max) {
  if (!(t > 0.0)) throw DomainError("lattice restriction needs t > 0");
  DiscreteSymbol d(-k1_max, k1_max, -k2_max, k2_max);
  for (int k1 = -k1_max; k1 <= k1_max; ++k1)
    for (int k2 = -k2_max; k2 <= k2_max; ++k2) d.set(k1, k2, m(t * k1, t * k2));
  return d;
}

std::size_t DiscreteSymbol::index(int k1, int k2) const {
  return static_cast<std::size_t>(k1 - k1_min_) * static_cast<std::size_t>(k2_max_ - k2_min_ + 1) +
         static_cast<std::size_t>(k2 - k2_min_);
}

cplx DiscreteSymbol::operator()(int k1, int k2) const {
  if (k1 < k1_min_ || k1 > k1_max_ || k2 < k2_min_ || k2 > k2_max_) return {};
  return values_[index(k1, k2)];
}

void DiscreteSymbol::set(int k1, int k2, cplx v) {
  if (k1 < k1_min_ || k1 > k1_max_ || k2 < k2_min_ || k2 > k2_max_) throw DomainError("index outside symbol window");
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("symbol values must be finite");
  values_[index(k1, k2)] = v;
}

Symbol2D mollify_symbol(const Symbol2D& m, double eps, const MollifyOptions& opts) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("mollification needs eps > 0");
  std::function<cplx(double, double)> rule;
  if (m.regularity() == Regularity::Continuous) {
    auto gh = std::make_shared<const quad::Rule>(quad::gauss_hermite(opts.hermite_nodes));
    rule = [m, eps, gh](double x, double y) {
      cplx acc{};
      for (std::size_t j = 0; j < gh->nodes.size(); ++j) {
        cplx row{};
        for (std::size_t i = 0; i < gh->nodes.size(); ++i) {
          row += gh->weights[i] * m(x - eps * gh->nodes[i], y - eps * gh->nodes[j]);
        }
        acc += gh->weights[j] * row;
      }
      return acc / kPi;
    };
  } else {
    const double R = opts.radius;
    quad::Options inner{opts.abs_tol * 0.1, 1e-13, 4000};
    quad::Options outer{opts.abs_tol, 1e-13, 4000};
    rule = [m, eps, R, inner, outer](double x, double y) {
      auto row = [&](double s) {
        const double ys = y - eps * s;
        auto f = [&](double t) { return m(x - eps * t, ys) * std::exp(-t * t); };
        return quad::integrate(f, -R, R, inner).value * std::exp(-s * s);
      };
      return quad::integrate(row, -R, R, outer).value / kPi;
    };
  }
  Symbol2D out(rule, m.bound(), Regularity::Continuous, "mollified(" + m.id() + "," + fmt(eps) + ")");
  for (const auto& f : m.flags()) out.with_flag(f);
  return out;
}

double psi_alpha(double alpha, double t) {
  if (!std::isfinite(alpha) || !std::isfinite(t)) throw DomainError("psi_alpha arguments must be finite");
  const double a2 = 1.0 + alpha * alpha;
  const double center = alpha * t / a2;
  const double half = 10.0 / std::sqrt(a2);
  auto g = [alpha, t](double s) {
    const double u = t - alpha * s;
    return std::exp(-(u * u + s * s)) / kPi;
  };
  return quad::integrate_real(g, center - half, center + half, {1e-15, 1e-13, 2000});
}

cplx ridge_mollified(const Symbol1D& profile, double alpha, double u, double eps) {
  if (!(eps > 0.0)) throw DomainError("mollification needs eps > 0");
  const double half = 8.0 * std::sqrt(1.0 + alpha * alpha);
  auto f = [&](double t) { return profile(u - eps * t) * psi_alpha(alpha, t); };
  return quad::integrate(f, -half, half, {1e-12, 1e-12, 4000}).value;
}

}  // namespace deleeuw
