#include "ghs/metric_zoo.hpp"

#include <cmath>
#include <sstream>

namespace ghs {

FSel fsel_from_string(const std::string& s) {
  if (s == "zero") return FSel::zero;
  if (s == "one") return FSel::one;
  if (s == "one_plus_w") return FSel::one_plus_w;
  if (s == "maxsym_plus") return FSel::maxsym_plus;
  if (s == "maxsym_minus") return FSel::maxsym_minus;
  throw ConfigError("unknown f selector: " + s);
}

std::string to_string(FSel f) {
  switch (f) {
    case FSel::zero: return "zero";
    case FSel::one: return "one";
    case FSel::one_plus_w: return "one_plus_w";
    case FSel::maxsym_plus: return "maxsym_plus";
    case FSel::maxsym_minus: return "maxsym_minus";
  }
  return "?";
}

FamilyId family_from_string(const std::string& s) {
  if (s == "minkowski") return FamilyId::minkowski;
  if (s == "gr_desitter_2d") return FamilyId::gr_desitter_2d;
  if (s == "momentum_desitter") return FamilyId::momentum_desitter;
  if (s == "lorentz_invariant") return FamilyId::lorentz_invariant;
  if (s == "conformal") return FamilyId::conformal;
  if (s == "conformal_maxsym") return FamilyId::conformal_maxsym;
  if (s == "generic_dgr") return FamilyId::generic_dgr;
  if (s == "hamilton_from_h") return FamilyId::hamilton_from_h;
  throw ConfigError("unknown metric family: " + s);
}

std::string to_string(FamilyId id) {
  switch (id) {
    case FamilyId::minkowski: return "minkowski";
    case FamilyId::gr_desitter_2d: return "gr_desitter_2d";
    case FamilyId::momentum_desitter: return "momentum_desitter";
    case FamilyId::lorentz_invariant: return "lorentz_invariant";
    case FamilyId::conformal: return "conformal";
    case FamilyId::conformal_maxsym: return "conformal_maxsym";
    case FamilyId::generic_dgr: return "generic_dgr";
    case FamilyId::hamilton_from_h: return "hamilton_from_h";
  }
  return "?";
}

void FamilySpec::validate() const {
  if (!(lambda > 0)) throw ConfigError("lambda must be positive");
  if (n != 2 && n != 4) throw ConfigError("dimension must be 2 or 4");
  if (branch != 1 && branch != -1) throw ConfigError("branch must be +1 or -1");
  if (id == FamilyId::gr_desitter_2d && n != 2)
    throw ConfigError("gr_desitter_2d is defined for n=2");
}

Tetrad base_tetrad(int n, double alpha) {
  Tetrad t;
  t.n = n;
  t.e = MatrixField::make([n, alpha]<class S>(const VecN<S>& x, const VecN<S>&) -> MatN<S> {
    MatN<S> e(n);
    e(0, 0) = S(1.0);
    S w = exp((-alpha) * x[0]);
    for (int i = 1; i < n; ++i) e(i, i) = w;
    return e;
  });
  t.einv = MatrixField::make([n, alpha]<class S>(const VecN<S>& x, const VecN<S>&) -> MatN<S> {
    MatN<S> e(n);
    e(0, 0) = S(1.0);
    S w = exp(alpha * x[0]);
    for (int i = 1; i < n; ++i) e(i, i) = w;
    return e;
  });
  return t;
}

Tetrad boosted_tetrad(const Tetrad& t, double rapidity) {
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  const int n = t.n;
  Tetrad out;
  out.n = n;
  MatrixField base_e = t.e, base_ei = t.einv;
  out.e = MatrixField::make([n, ch, sh, base_e]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
    MatN<S> L = MatN<S>::identity(n);
    L(0, 0) = S(ch);
    L(0, 1) = S(sh);
    L(1, 0) = S(sh);
    L(1, 1) = S(ch);
    return mat_mul(base_e(x, k), L);
  });
  out.einv = MatrixField::make([n, ch, sh, base_ei]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
    MatN<S> Li = MatN<S>::identity(n);
    Li(0, 0) = S(ch);
    Li(0, 1) = S(-sh);
    Li(1, 0) = S(-sh);
    Li(1, 1) = S(ch);
    return mat_mul(Li, base_ei(x, k));
  });
  return out;
}

namespace {

FamilySpec normalized(FamilySpec s) {
  switch (s.id) {
    case FamilyId::minkowski:
      s.alpha = 0;
      s.f1 = FSel::one;
      s.f2 = FSel::zero;
      break;
    case FamilyId::gr_desitter_2d:
      s.f1 = FSel::one;
      s.f2 = FSel::zero;
      break;
    case FamilyId::momentum_desitter:
      s.f1 = FSel::one;
      s.f2 = FSel::one;
      break;
    case FamilyId::conformal:
      s.f2 = FSel::zero;
      break;
    case FamilyId::conformal_maxsym:
      s.f1 = s.branch > 0 ? FSel::maxsym_plus : FSel::maxsym_minus;
      s.f2 = FSel::zero;
      break;
    default:
      break;
  }
  return s;
}

MetricField lorentz_type_metric(const FamilySpec& s) {
  return MetricField::make(
      MetricParams{s.n, s.lambda, s.alpha},
      [s]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
        const double L2 = s.lambda * s.lambda;
        MatN<S> a = base_lower(s.n, s.alpha, x);
        S w = base_kbar2(s.n, s.alpha, x, k) / L2;
        S f1 = fsel_eval(s.f1, w);
        S f2 = fsel_eval(s.f2, w);
        MatN<S> g(s.n);
        for (int i = 0; i < s.n; ++i)
          for (int j = 0; j < s.n; ++j) g(i, j) = a(i, j) * f1 + (k[i] * k[j] / L2) * f2;
        return g;
      });
}

MetricField hamilton_from_h_metric(const FamilySpec& s) {
  // lower components = inverse of g_H^{mu nu} = h' a^{mu nu} + 2 h'' kbar^mu kbar^nu
  return MetricField::make(
      MetricParams{s.n, s.lambda, s.alpha},
      [s]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
        MatN<S> aup = base_upper(s.n, s.alpha, x);
        S u = base_kbar2(s.n, s.alpha, x, k);
        Dual<Dual<S>> ud{Dual<S>{u, S(1.0)}, Dual<S>{S(1.0), S{}}};
        auto h = maxsym_hamiltonian(ud, s.lambda, s.branch);
        S hp = h.v.d, hpp = h.d.d;
        VecN<S> kup = mat_vec(aup, k);
        MatN<S> gup(s.n);
        for (int i = 0; i < s.n; ++i)
          for (int j = 0; j < s.n; ++j) gup(i, j) = hp * aup(i, j) + (2.0 * hpp) * kup[i] * kup[j];
        return inverse(gup);
      });
}

}  // namespace

MetricField generic_dgr_metric(const FamilySpec& spec, const Tetrad& tetrad) {
  return MetricField::make(
      MetricParams{spec.n, spec.lambda, spec.alpha},
      [spec, tetrad]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
        const double L2 = spec.lambda * spec.lambda;
        MatN<S> a = base_lower(spec.n, spec.alpha, x);
        S w = base_kbar2(spec.n, spec.alpha, x, k) / L2;
        S f1 = fsel_eval(spec.f1, w);
        S f2 = fsel_eval(spec.f2, w);
        S f3 = fsel_eval(spec.f3, w);
        S f4 = fsel_eval(spec.f4, w);
        VecN<S> z = tetrad.z_vector(x, spec.nvec);
        MatN<S> g(spec.n);
        for (int i = 0; i < spec.n; ++i)
          for (int j = 0; j < spec.n; ++j)
            g(i, j) = a(i, j) * f1 + (k[i] * k[j] / L2) * f2 +
                      ((k[i] * z[j] + k[j] * z[i]) / spec.lambda) * f3 + z[i] * z[j] * f4;
        return g;
      });
}

MetricField build_metric(const FamilySpec& spec_in) {
  spec_in.validate();
  FamilySpec s = normalized(spec_in);
  switch (s.id) {
    case FamilyId::minkowski:
    case FamilyId::gr_desitter_2d:
    case FamilyId::momentum_desitter:
    case FamilyId::lorentz_invariant:
    case FamilyId::conformal:
    case FamilyId::conformal_maxsym:
      return lorentz_type_metric(s);
    case FamilyId::generic_dgr:
      return generic_dgr_metric(s, base_tetrad(s.n, s.alpha));
    case FamilyId::hamilton_from_h:
      return hamilton_from_h_metric(s);
  }
  throw ConfigError("unknown family");
}

std::optional<ScalarField> closed_form_hamiltonian(const FamilySpec& spec_in) {
  FamilySpec s = normalized(spec_in);
  const int n = s.n;
  const double lambda = s.lambda, alpha = s.alpha;

  if (s.id == FamilyId::hamilton_from_h) {
    // the squared distance of the generated metric, not the generator itself
    return ScalarField::make(n, [n, lambda, alpha, branch = s.branch]<class S>(
                                    const VecN<S>& x, const VecN<S>& k) -> S {
      return maxsym_distance(base_kbar2(n, alpha, x, k), lambda, branch);
    });
  }
  if (s.id == FamilyId::generic_dgr) return std::nullopt;

  // effective radial factor phi(w) = f1(w) + w f2(w) fixes the distance ODE
  // h = h'^2 u phi(u/Lambda^2)
  if (s.f1 == FSel::one && s.f2 == FSel::zero) {
    // GR limit: H = kbar^2
    return ScalarField::make(n, [n, alpha]<class S>(const VecN<S>& x, const VecN<S>& k) -> S {
      return base_kbar2(n, alpha, x, k);
    });
  }
  double c = 0;  // phi = 1 + c w
  if (s.f1 == FSel::one && s.f2 == FSel::one) c = 1;
  if (s.f1 == FSel::one_plus_w && s.f2 == FSel::one) c = 2;
  if (s.f1 == FSel::one_plus_w && s.f2 == FSel::zero) c = 1;
  if (c != 0) {
    return ScalarField::make(n, [n, alpha, lambda, c]<class S>(const VecN<S>& x, const VecN<S>& k) -> S {
      S u = base_kbar2(n, alpha, x, k);
      return (lambda * lambda / c) * asinh_sq((c / (lambda * lambda)) * u);
    });
  }
  if ((s.f1 == FSel::maxsym_plus || s.f1 == FSel::maxsym_minus) && s.f2 == FSel::zero) {
    const double sign = (s.f1 == FSel::maxsym_plus) ? 1.0 : -1.0;
    return ScalarField::make(n, [n, alpha, lambda, sign]<class S>(const VecN<S>& x, const VecN<S>& k) -> S {
      S u = base_kbar2(n, alpha, x, k);
      return sign * (4.0 * lambda * lambda) * atan_sq((sign / (4.0 * lambda * lambda)) * u);
    });
  }
  return std::nullopt;
}

MetricFamily build_family(const FamilySpec& spec_in) {
  spec_in.validate();
  FamilySpec s = normalized(spec_in);
  MetricFamily fam;
  fam.spec = s;
  fam.metric = build_metric(s);
  fam.tetrad = base_tetrad(s.n, s.alpha);
  fam.casimir_base =
      ScalarField::make(s.n, [n = s.n, alpha = s.alpha]<class S>(const VecN<S>& x, const VecN<S>& k) -> S {
        return base_kbar2(n, alpha, x, k);
      });
  fam.seed_hamiltonian = fam.casimir_base;
  fam.distance_hamiltonian = closed_form_hamiltonian(s);
  if (s.id == FamilyId::hamilton_from_h) {
    fam.generator_hamiltonian = ScalarField::make(
        s.n, [n = s.n, alpha = s.alpha, lambda = s.lambda, branch = s.branch]<class S>(
                 const VecN<S>& x, const VecN<S>& k) -> S {
          return maxsym_hamiltonian(base_kbar2(n, alpha, x, k), lambda, branch);
        });
  }

  const double L2 = s.lambda * s.lambda;
  fam.in_domain = [s, L2](const PhasePoint& p) -> bool {
    double u = 0;
    {
      auto a = base_upper(s.n, s.alpha, p.x);
      u = quad_form(a, p.k, p.k);
    }
    const double w = u / L2;
    if (s.id == FamilyId::hamilton_from_h) {
      if (!(w > 0.05)) return false;
      if (s.branch < 0 && !(4 * w < 0.9)) return false;
      return true;
    }
    const double f1 = fsel_eval(s.f1, w);
    const double f2 = fsel_eval(s.f2, w);
    if (std::fabs(f1) < 1e-6) return false;
    if (std::fabs(f1 + w * f2) < 1e-6) return false;
    // branch cuts of the closed-form distances
    if (s.f1 == FSel::one && s.f2 == FSel::one && !(w > -0.95)) return false;
    if (s.f1 == FSel::one_plus_w && s.f2 == FSel::one && !(2 * w > -0.95)) return false;
    if (s.f1 == FSel::one_plus_w && s.f2 == FSel::zero && !(w > -0.95)) return false;
    if (s.f1 == FSel::maxsym_plus && !(w > -3.8)) return false;
    if (s.f1 == FSel::maxsym_minus && !(w < 3.8)) return false;
    if (s.id == FamilyId::generic_dgr) {
      try {
        (void)inverse(build_metric(s).lower_at(p));
      } catch (const DegenerateMetricError&) {
        return false;
      }
    }
    return true;
  };
  return fam;
}

MetricField tetrad_lift(const MetricField& zeta, const Tetrad& tetrad) {
  MetricParams params = zeta.params();
  params.n = tetrad.n;
  return MetricField(
      params,
      MatrixField::make([zeta, tetrad]<class S>(const VecN<S>& x, const VecN<S>& k) -> MatN<S> {
        const int n = x.n;
        auto kb = tetrad.flat_momentum(x, k);
        VecN<S> xflat(n);  // zeta is momentum-only; evaluate it at x = 0
        MatN<S> zl = zeta.lower(xflat, kb);
        auto ei = tetrad.coframe(x);
        MatN<S> g(n);
        for (int mu = 0; mu < n; ++mu)
          for (int nu = 0; nu < n; ++nu) {
            S sum{};
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) sum += ei(a, mu) * zl(a, b) * ei(b, nu);
            g(mu, nu) = sum;
          }
        return g;
      }));
}

std::string describe(const FamilySpec& spec) {
  FamilySpec s = normalized(spec);
  std::ostringstream os;
  os << "family " << to_string(s.id) << " (n=" << s.n << ", lambda=" << s.lambda
     << ", alpha=" << s.alpha << ", branch=" << (s.branch > 0 ? "+" : "-") << ")\n";
  os << "  base: ds^2 = (dx^0)^2 - e^{2 alpha x^0} dx_i^2";
  if (s.alpha == 0) os << " (Minkowski)";
  os << "\n";
  switch (s.id) {
    case FamilyId::hamilton_from_h:
      os << "  g^{mu nu} = (1/2) dbar^mu dbar^nu H with the maximally symmetric momentum-space\n"
            "  Hamiltonian H(u) = sign*Lambda*sqrt(u) - (Lambda^2/2) ln(1 + sign*2 sqrt(u)/Lambda), "
            "u = kbar^2\n"
            "  domain: timelike momenta (kbar^2 > 0)\n";
      break;
    case FamilyId::generic_dgr:
      os << "  g = a f1 + k k f2/Lambda^2 + (k Z + Z k) f3/Lambda + Z Z f4,  Z_mu = n_alpha "
            "e^alpha_mu\n"
         << "  f1=" << to_string(s.f1) << " f2=" << to_string(s.f2) << " f3=" << to_string(s.f3)
         << " f4=" << to_string(s.f4) << "\n";
      break;
    default:
      os << "  g = a(x) f1(w) + k k f2(w)/Lambda^2,  w = kbar^2/Lambda^2,  f1="
         << to_string(s.f1) << " f2=" << to_string(s.f2) << "\n";
      break;
  }
  auto h = closed_form_hamiltonian(s);
  os << "  closed-form squared distance: " << (h ? "available" : "numeric (shooting) only") << "\n";
  return os.str();
}

}  // namespace ghs
