#include "geoaudit/audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace geoaudit {

namespace {

using cd = std::complex<double>;

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm(const CVec& v) {
  double s = 0.0;
  for (const cd& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

std::vector<WaveField> default_wavefields(int dim) {
  if (dim < 2) throw ArgumentError("wavefield presets need dimension >= 2");
  const char* third = dim >= 3 ? "z" : "y";
  const std::string a = std::string("exp(x)*(1+0.3*") + third + ")";
  const std::string b = "sin(x+2*y)";
  const std::string c = std::string("x^2-") + third + "+2";
  std::vector<WaveField> out;
  for (const auto& text : {a, b, c}) out.push_back({text, ComplexExpr(parse_expr(text, dim))});
  return out;
}

ResidualReport ehrenfest_audit(const SurfaceSpec& spec, const OperatorParams& params,
                               const std::vector<WaveField>& psis, const std::vector<Point>& points,
                               AuditTolerances tol, Exec exec) {
  params.validate();
  if (!spec.sdf) throw ArgumentError("Ehrenfest audit requires a signed-distance surface");
  if (psis.size() < 2) throw ArgumentError("Ehrenfest audit needs at least two wavefields");

  ResidualReport rep;
  rep.surface = spec.name;
  rep.surface_params = spec.params;
  rep.dim = spec.dim;
  rep.params = params;
  rep.tol = tol;
  for (const auto& w : psis) rep.psi_labels.push_back(w.label);
  rep.samples.resize(points.size());

  for_each_index(points.size(), exec, [&](std::size_t i) {
    ResidualSample& s = rep.samples[i];
    s.index = i;
    s.point = points[i];
    s.f_analytic = residual_force_analytic(geometry_at(spec, points[i], 5), params);
    s.f_norm = norm(s.f_analytic);
    const double scale = std::max(1.0, s.f_norm);
    for (const auto& w : psis) {
      try {
        s.r_operational.push_back(residual_operational(spec, w.psi, points[i], params));
        s.accepted.push_back(true);
      } catch (const SmallAmplitudeError&) {
        s.r_operational.emplace_back();
        s.accepted.push_back(false);
      }
    }
    std::vector<const CVec*> used;
    for (std::size_t k = 0; k < psis.size(); ++k) {
      if (s.accepted[k]) used.push_back(&s.r_operational[k]);
    }
    if (used.empty()) throw DomainError("every wavefield vanishes at sample " + std::to_string(i));
    for (const CVec* r : used) {
      CVec diff(r->size());
      for (std::size_t c = 0; c < r->size(); ++c) diff[c] = (*r)[c] - s.f_analytic[c];
      s.mismatch = std::max(s.mismatch, norm(diff) / scale);
    }
    for (std::size_t a = 0; a < used.size(); ++a) {
      for (std::size_t b = a + 1; b < used.size(); ++b) {
        CVec diff(used[a]->size());
        for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = (*used[a])[c] - (*used[b])[c];
        s.spread = std::max(s.spread, norm(diff));
      }
    }
  });

  for (const auto& s : rep.samples) {
    rep.max_mismatch = std::max(rep.max_mismatch, s.mismatch);
    rep.max_abs_f = std::max(rep.max_abs_f, s.f_norm);
    rep.max_spread = std::max(rep.max_spread, s.spread);
  }
  return rep;
}

NoFixReport no_fix_check(const SurfaceSpec& spec, const OperatorParams& params, const Expr& potential,
                         const std::vector<WaveField>& psis, const std::vector<Point>& points, Exec exec) {
  params.validate();
  if (params.xi != 2.0 || params.eta != 1.0) throw ArgumentError("no-fix check is defined at (xi, eta) = (2, 1)");
  if (!spec.sdf) throw ArgumentError("no-fix check requires a signed-distance surface");
  if (potential.dim() != spec.dim) throw ArgumentError("potential dimension does not match surface");
  if (psis.empty()) throw ArgumentError("no-fix check needs at least one wavefield");

  NoFixReport rep;
  rep.surface = spec.name;
  rep.potential = potential.str();
  rep.samples.resize(points.size());
  const int d = spec.dim;

  for_each_index(points.size(), exec, [&](std::size_t i) {
    NoFixSample& s = rep.samples[i];
    s.index = i;
    s.point = points[i];
    const GeoJet geo = geometry_at(spec, points[i], 5);
    const Point n = geo.normal_value();
    const RJet w = evaluate(potential, points[i], 1);
    double n_grad = 0.0;
    for (int k = 0; k < d; ++k) n_grad += n[k] * w[1 + k];
    s.expected.resize(d);
    for (int k = 0; k < d; ++k) s.expected[k] = -(w[1 + k] - n[k] * n_grad);

    auto tangential = [&](auto const& v) {
      cd along = 0.0;
      for (int k = 0; k < d; ++k) along += n[k] * v[k];
      double t = 0.0;
      for (int k = 0; k < d; ++k) t += std::norm(cd(v[k]) - n[k] * along);
      return std::sqrt(t);
    };
    s.tangential_f = tangential(residual_force_analytic(geo, params));

    bool any = false;
    for (const auto& wf : psis) {
      CVec base;
      CVec shifted;
      try {
        base = residual_operational(spec, wf.psi, points[i], params);
        shifted = residual_operational(spec, wf.psi, points[i], params, &potential);
      } catch (const SmallAmplitudeError&) {
        s.delta.emplace_back();
        continue;
      }
      any = true;
      s.tangential_f = std::max(s.tangential_f, tangential(base));
      CVec delta(d);
      cd along = 0.0;
      double err = 0.0;
      for (int k = 0; k < d; ++k) {
        delta[k] = shifted[k] - base[k];
        along += n[k] * delta[k];
        err += std::norm(delta[k] - s.expected[k]);
      }
      s.delta_error = std::max(s.delta_error, std::sqrt(err));
      s.normal_delta = std::max(s.normal_delta, std::abs(along));
      s.delta.push_back(std::move(delta));
    }
    if (!any) throw DomainError("every wavefield vanishes at sample " + std::to_string(i));
  });

  for (const auto& s : rep.samples) {
    rep.max_delta_error = std::max(rep.max_delta_error, s.delta_error);
    rep.max_normal_delta = std::max(rep.max_normal_delta, s.normal_delta);
    rep.max_tangential_f = std::max(rep.max_tangential_f, s.tangential_f);
  }
  return rep;
}

const DefectEntry& HermiticityReport::defect(const std::string& op) const {
  for (const auto& d : defects) {
    if (d.op == op) return d;
  }
  throw ArgumentError("no defect entry for operator '" + op + "'");
}

namespace {

// Per-node values of phi, psi and of every operator (all components) applied to both.
struct NodeValues {
  cd phi;
  cd psi;
  std::vector<CVec> a_phi;  // [op][component]
  std::vector<CVec> a_psi;
};

using NodeOperator = std::function<CVec(const CJet&, const GeoJet&)>;

struct QuadratureProducts {
  std::vector<CVec> phi_a_psi;  // <phi, A psi> per op, per component
  std::vector<CVec> a_phi_psi;  // <A phi, psi>
};

QuadratureProducts quadrature_products(const SurfaceSpec& spec, const std::vector<NodeOperator>& ops,
                                       const WaveField& phi, const WaveField& psi, int resolution,
                                       int psi_order, int f_budget, Exec exec) {
  if (phi.psi.dim() != spec.dim || psi.psi.dim() != spec.dim) {
    throw ArgumentError("trial functions do not match the surface dimension");
  }
  const auto nodes = quadrature_nodes(spec, resolution);
  std::vector<NodeValues> values(nodes.size());
  for_each_index(nodes.size(), exec, [&](std::size_t i) {
    const Point& x = nodes[i].x;
    const GeoJet geo = geometry_of(spec.levelset, spec.sdf, x, f_budget);
    const CJet phi_jet = evaluate(phi.psi, x, psi_order);
    const CJet psi_jet = evaluate(psi.psi, x, psi_order);
    NodeValues& v = values[i];
    v.phi = phi_jet.value();
    v.psi = psi_jet.value();
    for (const auto& op : ops) {
      v.a_phi.push_back(op(phi_jet, geo));
      v.a_psi.push_back(op(psi_jet, geo));
    }
  });

  QuadratureProducts out;
  std::vector<cd> col(nodes.size());
  for (std::size_t o = 0; o < ops.size(); ++o) {
    const std::size_t width = values.front().a_psi[o].size();
    CVec left(width);
    CVec right(width);
    for (std::size_t c = 0; c < width; ++c) {
      for (std::size_t i = 0; i < nodes.size(); ++i) col[i] = std::conj(values[i].phi) * values[i].a_psi[o][c];
      left[c] = weighted_sum(nodes, col);
      for (std::size_t i = 0; i < nodes.size(); ++i) col[i] = std::conj(values[i].a_phi[o][c]) * values[i].psi;
      right[c] = weighted_sum(nodes, col);
    }
    out.phi_a_psi.push_back(std::move(left));
    out.a_phi_psi.push_back(std::move(right));
  }
  return out;
}

DefectEntry make_defect(std::string op, const CVec& left, const CVec& right) {
  DefectEntry e;
  e.op = std::move(op);
  for (std::size_t c = 0; c < left.size(); ++c) {
    e.defect.push_back(left[c] - right[c]);
    e.max_abs = std::max(e.max_abs, std::abs(e.defect.back()));
  }
  return e;
}

HermiticityReport report_header(const SurfaceSpec& spec, const OperatorParams& params, const WaveField& phi,
                                const WaveField& psi, int resolution) {
  HermiticityReport rep;
  rep.surface = spec.name;
  rep.surface_params = spec.params;
  rep.resolution = resolution;
  rep.params = params;
  rep.phi_label = phi.label;
  rep.psi_label = psi.label;
  return rep;
}

}  // namespace

HermiticityReport operator_defects(const SurfaceSpec& spec, const OperatorParams& params,
                                   const std::vector<std::string>& ops, const WaveField& phi, const WaveField& psi,
                                   int resolution, Exec exec) {
  params.validate();
  std::vector<NodeOperator> node_ops;
  for (const auto& name : ops) {
    if (name == "p" || name == "p_no_mean") {
      const MomentumKind kind = name == "p" ? MomentumKind::geometric : MomentumKind::tangential_only;
      node_ops.push_back([&params, kind](const CJet& u, const GeoJet& geo) {
        CVec out;
        for (const CJet& c : apply_p(u, geo, params, kind)) out.push_back(c.value());
        return out;
      });
    } else if (name == "S") {
      if (!spec.sdf) throw ArgumentError("quantum S requires a signed-distance surface");
      node_ops.push_back([&params](const CJet& u, const GeoJet& geo) {
        return CVec{apply_S_quantum(u, geo, params).value()};
      });
    } else if (name == "H") {
      node_ops.push_back([&params](const CJet& u, const GeoJet& geo) {
        return CVec{apply_H(u, geo, params).value()};
      });
    } else {
      throw ArgumentError("unknown operator '" + name + "'");
    }
  }
  const auto products = quadrature_products(spec, node_ops, phi, psi, resolution, 2, 4, exec);
  HermiticityReport rep = report_header(spec, params, phi, psi, resolution);
  for (std::size_t o = 0; o < ops.size(); ++o) {
    rep.defects.push_back(make_defect(ops[o], products.phi_a_psi[o], products.a_phi_psi[o]));
  }
  return rep;
}

HermiticityReport ordering_defects(const SurfaceSpec& spec, const OperatorParams& params, const WaveField& phi,
                                   const WaveField& psi, int resolution, MomentumKind momentum, Exec exec) {
  params.validate();
  if (resolution < 32) throw ArgumentError("ordering lab needs quadrature resolution >= 32");
  const int d = spec.dim;
  const double inv_mu = -1.0 / params.mu;

  // Coefficient fields of the levelset at the node: f_k, f_ij, g = 1/|grad f|.
  struct Coefficients {
    std::vector<RJet> grad;
    std::vector<RJet> hess;
    RJet inv_norm2;
    RJet inv_norm;
  };
  auto coefficients = [d, &spec](const GeoJet& geo) {
    Coefficients c;
    const RJet f = evaluate(spec.levelset, geo.point(), geo.budget());
    for (int k = 0; k < d; ++k) c.grad.push_back(lower(f, k));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) c.hess.push_back(lower(c.grad[i], j));
    }
    RJet norm2 = c.grad[0] * c.grad[0];
    for (int k = 1; k < d; ++k) norm2 += c.grad[k] * c.grad[k];
    c.inv_norm2 = reciprocal(norm2);
    c.inv_norm = reciprocal(sqrt(norm2));
    return c;
  };
  auto p = [&params, momentum](const CJet& u, const GeoJet& geo, int i) {
    return apply_p_component(u, geo, params, i, momentum);
  };

  // B_raw,k = -(f_k / (mu |grad f|^2)) sum_ij p_i (f_ij p_j psi)
  NodeOperator weinberg = [&, d](const CJet& u, const GeoJet& geo) {
    const Coefficients c = coefficients(geo);
    std::vector<CJet> p_u;
    for (int j = 0; j < d; ++j) p_u.push_back(p(u, geo, j));
    cd form = 0.0;
    for (int i = 0; i < d; ++i) {
      CJet inner(d, u.order() - 1);
      for (int j = 0; j < d; ++j) inner += p_u[j] * c.hess[i * d + j];
      form += p(inner, geo, i).value();
    }
    CVec out(d);
    for (int k = 0; k < d; ++k) out[k] = inv_mu * c.grad[k].value() * c.inv_norm2.value() * form;
    return out;
  };
  // B_2,k = -(1/mu) f_k sum_ij p_i (g p_j (g f_ij psi))
  NodeOperator second = [&, d](const CJet& u, const GeoJet& geo) {
    const Coefficients c = coefficients(geo);
    cd form = 0.0;
    for (int i = 0; i < d; ++i) {
      CJet inner(d, u.order() - 1);
      for (int j = 0; j < d; ++j) inner += p(u * (c.inv_norm * c.hess[i * d + j]), geo, j);
      form += p(inner * c.inv_norm, geo, i).value();
    }
    CVec out(d);
    for (int k = 0; k < d; ++k) out[k] = inv_mu * c.grad[k].value() * form;
    return out;
  };
  // B_3,k = -(1/mu) sum_ij p_i (g p_j (g f_ij f_k psi))
  NodeOperator third = [&, d](const CJet& u, const GeoJet& geo) {
    const Coefficients c = coefficients(geo);
    CVec out(d);
    for (int k = 0; k < d; ++k) {
      cd form = 0.0;
      for (int i = 0; i < d; ++i) {
        CJet inner(d, u.order() - 1);
        for (int j = 0; j < d; ++j) inner += p(u * (c.inv_norm * c.hess[i * d + j] * c.grad[k]), geo, j);
        form += p(inner * c.inv_norm, geo, i).value();
      }
      out[k] = inv_mu * form;
    }
    return out;
  };

  const auto products = quadrature_products(spec, {weinberg, second, third}, phi, psi, resolution, 2, 4, exec);
  HermiticityReport rep = report_header(spec, params, phi, psi, resolution);
  rep.momentum = momentum == MomentumKind::geometric ? "geometric"
                 : momentum == MomentumKind::ambient ? "ambient"
                                                     : "tangential_only";
  rep.defects.push_back(make_defect("weinberg_raw", products.phi_a_psi[0], products.a_phi_psi[0]));

  // <phi, oo psi> = (<phi, B psi> + <B phi, psi>)/2 and
  // <oo phi, psi> = conj(<psi, oo phi>) = conj((<psi, B phi> + <B psi, phi>)/2),
  // with <psi, B phi> = conj(<B phi, psi>) and <B psi, phi> = conj(<phi, B psi>).
  std::vector<CVec> sym_left;
  for (int m = 0; m < 3; ++m) {
    const CVec& lb = products.phi_a_psi[m];
    const CVec& rb = products.a_phi_psi[m];
    CVec left(d);
    CVec right(d);
    for (int k = 0; k < d; ++k) {
      left[k] = 0.5 * (lb[k] + rb[k]);
      right[k] = std::conj(0.5 * (std::conj(rb[k]) + std::conj(lb[k])));
    }
    rep.defects.push_back(make_defect("oo" + std::to_string(m + 1), left, right));
    sym_left.push_back(std::move(left));
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      PairwiseEntry e;
      e.a = "oo" + std::to_string(a + 1);
      e.b = "oo" + std::to_string(b + 1);
      for (int k = 0; k < d; ++k) {
        e.difference.push_back(sym_left[a][k] - sym_left[b][k]);
        e.max_abs = std::max(e.max_abs, std::abs(e.difference.back()));
      }
      rep.pairwise.push_back(std::move(e));
    }
  }
  return rep;
}

}  // namespace geoaudit
