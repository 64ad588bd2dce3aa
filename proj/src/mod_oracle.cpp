#include "frobcat/mod_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace frobcat {

namespace {

std::vector<int> block_offsets(const std::vector<int>& dim, int* total) {
  std::vector<int> offset(dim.size());
  int acc = 0;
  for (size_t i = 0; i < dim.size(); ++i) {
    offset[i] = acc;
    acc += dim[i];
  }
  *total = acc;
  return offset;
}

// eta as one (total_G x total_F) block-diagonal matrix.
MatrixFp diagonal_transform(const FinCategory& cat, const VectFunctor& F, const VectFunctor& G,
                            const VectNatTransform& eta) {
  int totalF = 0, totalG = 0;
  const std::vector<int> offF = block_offsets(F.dim, &totalF);
  const std::vector<int> offG = block_offsets(G.dim, &totalG);
  MatrixFp out(F.p, totalG, totalF);
  for (int i = 0; i < cat.n_objects; ++i)
    for (int r = 0; r < G.dim[i]; ++r)
      for (int c = 0; c < F.dim[i]; ++c) out.set(offG[i] + r, offF[i] + c, eta.component[i].at(r, c));
  return out;
}

}  // namespace

std::optional<std::string> check_vect_functor(const FinCategory& cat, const VectFunctor& F) {
  if (!is_prime(F.p)) return "modulus is not prime";
  if (static_cast<int>(F.dim.size()) != cat.n_objects) return "dimension table has wrong length";
  for (int d : F.dim)
    if (d < 0) return "negative dimension";
  if (static_cast<int>(F.action.size()) != cat.n_morphisms()) return "action table has wrong length";
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    const MatrixFp& a = F.action[m];
    if (a.p() != F.p) return "action of '" + cat.name(m) + "' has the wrong modulus";
    if (a.rows() != F.dim[cat.cod(m)] || a.cols() != F.dim[cat.dom(m)])
      return "action of '" + cat.name(m) + "' has the wrong shape";
  }
  for (int i = 0; i < cat.n_objects; ++i)
    if (!(F.action[cat.identity[i]] == MatrixFp::identity(F.p, F.dim[i])))
      return "action of identity of object " + std::to_string(i) + " is not the identity";
  for (int g = 0; g < cat.n_morphisms(); ++g)
    for (int f = 0; f < cat.n_morphisms(); ++f) {
      const int h = cat.compose(g, f);
      if (h == -1) continue;
      if (!(F.action[h] == F.action[g] * F.action[f]))
        return "functoriality fails on '" + cat.name(g) + "'∘'" + cat.name(f) + "'";
    }
  return std::nullopt;
}

VectFunctor make_vect_functor(const FinCategory& cat, uint32_t p, std::vector<int> dim,
                              std::vector<MatrixFp> action) {
  VectFunctor F{p, std::move(dim), std::move(action)};
  if (const auto err = check_vect_functor(cat, F)) throw std::invalid_argument("make_vect_functor: " + *err);
  return F;
}

std::optional<std::string> check_vect_nat(const FinCategory& cat, const VectFunctor& F, const VectFunctor& G,
                                          const VectNatTransform& eta) {
  if (static_cast<int>(eta.component.size()) != cat.n_objects) return "component table has wrong length";
  for (int i = 0; i < cat.n_objects; ++i) {
    const MatrixFp& c = eta.component[i];
    if (c.p() != F.p || c.rows() != G.dim[i] || c.cols() != F.dim[i])
      return "component at object " + std::to_string(i) + " has the wrong shape";
  }
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    const int i = cat.dom(m), j = cat.cod(m);
    if (!(eta.component[j] * F.action[m] == G.action[m] * eta.component[i]))
      return "naturality fails at '" + cat.name(m) + "'";
  }
  return std::nullopt;
}

VectLimit limit_vect(const FinCategory& cat, const VectFunctor& F) {
  VectLimit lim;
  lim.offset = block_offsets(F.dim, &lim.total);

  int n_rows = 0;
  for (int m = 0; m < cat.n_morphisms(); ++m)
    if (!cat.is_identity(m)) n_rows += F.dim[cat.cod(m)];
  MatrixFp constraints(F.p, n_rows, lim.total);
  int row = 0;
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    if (cat.is_identity(m)) continue;
    const int i = cat.dom(m), j = cat.cod(m);
    for (int r = 0; r < F.dim[j]; ++r, ++row) {
      for (int c = 0; c < F.dim[i]; ++c) constraints.set(row, lim.offset[i] + c, F.action[m].at(r, c));
      constraints.set(row, lim.offset[j] + r,
                      static_cast<uint32_t>((static_cast<uint64_t>(constraints.at(row, lim.offset[j] + r)) + F.p - 1) % F.p));
    }
  }
  lim.basis = nullspace(constraints);
  return lim;
}

VectColimit colimit_vect(const FinCategory& cat, const VectFunctor& F) {
  VectColimit colim;
  colim.offset = block_offsets(F.dim, &colim.total);

  int n_relations = 0;
  for (int m = 0; m < cat.n_morphisms(); ++m)
    if (!cat.is_identity(m)) n_relations += F.dim[cat.dom(m)];
  MatrixFp relations(F.p, n_relations, colim.total);
  int row = 0;
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    if (cat.is_identity(m)) continue;
    const int i = cat.dom(m), j = cat.cod(m);
    for (int t = 0; t < F.dim[i]; ++t, ++row) {
      for (int r = 0; r < F.dim[j]; ++r) relations.set(row, colim.offset[j] + r, F.action[m].at(r, t));
      relations.set(row, colim.offset[i] + t,
                    static_cast<uint32_t>((static_cast<uint64_t>(relations.at(row, colim.offset[i] + t)) + F.p - 1) % F.p));
    }
  }
  const Rref red = rref(relations);
  {
    size_t next = 0;
    for (int c = 0; c < colim.total; ++c) {
      if (next < red.pivot_cols.size() && red.pivot_cols[next] == c)
        ++next;
      else
        colim.quotient_cols.push_back(c);
    }
  }
  const int q = static_cast<int>(colim.quotient_cols.size());
  colim.projection = MatrixFp(F.p, q, colim.total);
  for (int t = 0; t < q; ++t) colim.projection.set(t, colim.quotient_cols[t], 1);
  // a pivot coordinate maps to minus (the rest of its reduced relation row)
  for (int r = 0; r < red.rank; ++r)
    for (int t = 0; t < q; ++t) {
      const uint32_t v = red.matrix.at(r, colim.quotient_cols[t]);
      if (v != 0) colim.projection.set(t, red.pivot_cols[r], F.p - v);
    }
  colim.lift = MatrixFp(F.p, colim.total, q);
  for (int t = 0; t < q; ++t) colim.lift.set(colim.quotient_cols[t], t, 1);
  return colim;
}

MatrixFp canonical_map_vect(const FinCategory& cat, const VectFunctor& F, const VectLimit& lim,
                            const VectColimit& colim) {
  const ComponentPartition parts = connected_components(cat);
  std::vector<int> base(parts.count, -1);
  for (int i = cat.n_objects - 1; i >= 0; --i) base[parts.component[i]] = i;

  MatrixFp out(F.p, colim.dim(), lim.dim());
  for (int col = 0; col < lim.dim(); ++col) {
    // class of the tuple entry at each object; constant per component
    std::vector<MatrixFp> per_object(cat.n_objects, MatrixFp(F.p, colim.dim(), 1));
    for (int i = 0; i < cat.n_objects; ++i) {
      MatrixFp embedded(F.p, colim.total, 1);
      for (int r = 0; r < F.dim[i]; ++r) embedded.set(colim.offset[i] + r, 0, lim.basis.at(lim.offset[i] + r, col));
      per_object[i] = colim.projection * embedded;
    }
    for (int i = 0; i < cat.n_objects; ++i)
      if (!(per_object[i] == per_object[base[parts.component[i]]]))
        throw std::logic_error("canonical_map_vect: image class depends on the chosen object of a component");
    MatrixFp sum(F.p, colim.dim(), 1);
    for (int c = 0; c < parts.count; ++c) sum = sum + per_object[base[c]];
    for (int r = 0; r < colim.dim(); ++r) out.set(r, col, sum.at(r, 0));
  }
  return out;
}

MatrixFp canonical_map_vect(const FinCategory& cat, const VectFunctor& F) {
  return canonical_map_vect(cat, F, limit_vect(cat, F), colimit_vect(cat, F));
}

MatrixFp nat_limit_map(const FinCategory& cat, const VectFunctor& F, const VectFunctor& G,
                       const VectNatTransform& eta, const VectLimit& limF, const VectLimit& limG) {
  const MatrixFp mapped = diagonal_transform(cat, F, G, eta) * limF.basis;
  const auto solved = solve_matrix(limG.basis, mapped);
  if (!solved) throw std::logic_error("nat_limit_map: transform does not preserve the limit subspace");
  return *solved;
}

MatrixFp nat_colimit_map(const FinCategory& cat, const VectFunctor& F, const VectFunctor& G,
                         const VectNatTransform& eta, const VectColimit& colimF, const VectColimit& colimG) {
  return colimG.projection * (diagonal_transform(cat, F, G, eta) * colimF.lift);
}

NormSplitting norm_splitting(const FinCategory& group_cat, const VectFunctor& F) {
  if (group_cat.n_objects != 1) throw std::invalid_argument("norm_splitting: not a one-object category");
  const int order = group_cat.n_morphisms();
  for (int m = 0; m < order; ++m) {
    bool invertible_m = false;
    for (int w = 0; w < order && !invertible_m; ++w)
      invertible_m = group_cat.compose(m, w) == group_cat.identity[0] &&
                     group_cat.compose(w, m) == group_cat.identity[0];
    if (!invertible_m)
      throw std::invalid_argument("norm_splitting: morphism '" + group_cat.name(m) + "' is not invertible");
  }
  if (static_cast<uint64_t>(order) % F.p == 0)
    throw std::invalid_argument("norm_splitting: group order " + std::to_string(order) +
                                " is not invertible mod " + std::to_string(F.p));

  NormSplitting ns;
  MatrixFp sum(F.p, F.dim[0], F.dim[0]);
  for (int m = 0; m < order; ++m) sum = sum + F.action[m];
  ns.averaging = sum.scaled(inv_mod(static_cast<uint32_t>(order % F.p), F.p));
  if (!(ns.averaging * ns.averaging == ns.averaging))
    throw std::logic_error("norm_splitting: averaging matrix is not idempotent");

  const VectLimit lim = limit_vect(group_cat, F);
  const VectColimit colim = colimit_vect(group_cat, F);
  const auto descended = solve_matrix(lim.basis, ns.averaging * colim.lift);
  if (!descended) throw std::logic_error("norm_splitting: averaging image is not inside the invariants");
  ns.colim_to_lim = *descended;
  return ns;
}

// ------------------------- naturality solver -------------------------------

NaturalitySolution solve_naturality(const FinCategory& cat, const NaturalityProblem& problem,
                                    const NatSolveOptions& options) {
  if (problem.functors.empty()) throw std::invalid_argument("solve_naturality: no functors");
  const uint32_t p = problem.functors[0].p;
  for (const VectFunctor& F : problem.functors) {
    if (F.p != p) throw std::invalid_argument("solve_naturality: mixed moduli");
    if (const auto err = check_vect_functor(cat, F))
      throw std::invalid_argument("solve_naturality: functor: " + *err);
  }
  const int n_functors = static_cast<int>(problem.functors.size());
  std::vector<VectLimit> lims(n_functors);
  std::vector<VectColimit> colims(n_functors);
  for (int t = 0; t < n_functors; ++t) {
    lims[t] = limit_vect(cat, problem.functors[t]);
    colims[t] = colimit_vect(cat, problem.functors[t]);
  }

  NaturalitySolution solution;
  for (int t = 0; t < n_functors; ++t)
    if (lims[t].dim() != colims[t].dim()) {
      solution.result = Feasibility::infeasible;
      solution.reason = "functor " + std::to_string(t) + " has limit dimension " +
                        std::to_string(lims[t].dim()) + " but colimit dimension " +
                        std::to_string(colims[t].dim());
      return solution;
    }

  // unknown layout: psi_t is (q_t x k_t), entries row-major
  std::vector<int> var_offset(n_functors + 1, 0);
  for (int t = 0; t < n_functors; ++t)
    var_offset[t + 1] = var_offset[t] + colims[t].dim() * lims[t].dim();
  const int n_vars = var_offset[n_functors];

  auto extract_psi = [&](const std::vector<uint32_t>& x) {
    std::vector<MatrixFp> psi;
    psi.reserve(n_functors);
    for (int t = 0; t < n_functors; ++t) {
      MatrixFp m(p, colims[t].dim(), lims[t].dim());
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.set(r, c, x[var_offset[t] + r * m.cols() + c]);
      psi.push_back(std::move(m));
    }
    return psi;
  };

  if (n_vars == 0) {  // every psi is the empty matrix
    solution.result = Feasibility::feasible;
    solution.psi = extract_psi({});
    solution.reason = "all limits and colimits are zero";
    return solution;
  }

  int n_equations = 0;
  for (const auto& transform : problem.transforms)
    n_equations += colims[transform.dst].dim() * lims[transform.src].dim();
  MatrixFp system(p, n_equations, n_vars);
  int row = 0;
  for (const auto& transform : problem.transforms) {
    const int s = transform.src, t = transform.dst;
    const VectFunctor& F = problem.functors[s];
    const VectFunctor& G = problem.functors[t];
    if (const auto err = check_vect_nat(cat, F, G, transform.eta))
      throw std::invalid_argument("solve_naturality: transform: " + *err);
    const MatrixFp lim_eta = nat_limit_map(cat, F, G, transform.eta, lims[s], lims[t]);
    const MatrixFp colim_eta = nat_colimit_map(cat, F, G, transform.eta, colims[s], colims[t]);
    // colim_eta · psi_s - psi_t · lim_eta = 0
    const int qs = colims[s].dim(), ks = lims[s].dim();
    const int qt = colims[t].dim(), kt = lims[t].dim();
    for (int r = 0; r < qt; ++r)
      for (int c = 0; c < ks; ++c, ++row) {
        for (int a = 0; a < qs; ++a)
          system.set(row, var_offset[s] + a * ks + c,
                     static_cast<uint32_t>((static_cast<uint64_t>(system.at(row, var_offset[s] + a * ks + c)) + colim_eta.at(r, a)) % p));
        for (int b = 0; b < kt; ++b)
          system.set(row, var_offset[t] + r * kt + b,
                     static_cast<uint32_t>((system.at(row, var_offset[t] + r * kt + b) + static_cast<uint64_t>(p - 1) * lim_eta.at(b, c)) % p));
      }
  }

  const MatrixFp space = nullspace(system);
  const int degrees = space.cols();

  // tier 1: a block that every solution leaves zero cannot be invertible
  for (int t = 0; t < n_functors; ++t) {
    if (colims[t].dim() == 0) continue;
    bool all_zero = true;
    for (int v = var_offset[t]; v < var_offset[t + 1] && all_zero; ++v)
      for (int c = 0; c < degrees && all_zero; ++c)
        if (space.at(v, c) != 0) all_zero = false;
    if (all_zero) {
      solution.result = Feasibility::infeasible;
      solution.reason = "psi of functor " + std::to_string(t) + " is forced to zero by the constraints";
      return solution;
    }
  }

  auto point_at = [&](const std::vector<uint32_t>& coeff) {
    std::vector<uint32_t> x(n_vars, 0);
    for (int c = 0; c < degrees; ++c) {
      if (coeff[c] == 0) continue;
      for (int v = 0; v < n_vars; ++v)
        x[v] = (x[v] + static_cast<uint64_t>(coeff[c]) * space.at(v, c)) % p;
    }
    return x;
  };
  auto all_invertible = [&](const std::vector<MatrixFp>& psi) {
    for (const MatrixFp& m : psi)
      if (!m.is_invertible()) return false;
    return true;
  };

  // tier 2: exhaustive when the solution space is small
  uint64_t points = 1;
  bool small = true;
  for (int c = 0; c < degrees && small; ++c) {
    points *= p;
    if (points > options.exhaustive_budget) small = false;
  }
  if (small) {
    std::vector<uint32_t> coeff(degrees, 0);
    for (uint64_t index = 0; index < points; ++index) {
      uint64_t rest = index;
      for (int c = 0; c < degrees; ++c) {
        coeff[c] = static_cast<uint32_t>(rest % p);
        rest /= p;
      }
      std::vector<MatrixFp> psi = extract_psi(point_at(coeff));
      ++solution.points_tried;
      if (all_invertible(psi)) {
        solution.result = Feasibility::feasible;
        solution.psi = std::move(psi);
        solution.reason = "found by exhaustive enumeration";
        return solution;
      }
    }
    solution.result = Feasibility::infeasible;
    solution.reason = "exhausted all " + std::to_string(points) +
                      " solutions of the constraint system; each leaves some psi singular";
    return solution;
  }

  // tier 3: seeded sampling; failure stays honest
  Rng rng = Rng::stream(options.seed, 0);
  std::vector<uint32_t> coeff(degrees, 0);
  for (uint64_t trial = 0; trial < options.sample_budget; ++trial) {
    for (int c = 0; c < degrees; ++c) coeff[c] = static_cast<uint32_t>(rng.below(static_cast<int>(p)));
    std::vector<MatrixFp> psi = extract_psi(point_at(coeff));
    ++solution.points_tried;
    if (all_invertible(psi)) {
      solution.result = Feasibility::feasible;
      solution.psi = std::move(psi);
      solution.reason = "found by sampling";
      return solution;
    }
  }
  solution.result = Feasibility::inconclusive;
  solution.reason = "no all-invertible solution within " + std::to_string(options.sample_budget) + " samples";
  return solution;
}

// ------------------------ group reduction ----------------------------------

GroupModel group_model(const FinCategory& cat, const InvariantSystem& is) {
  GroupModel model;
  model.group = group_of(cat, is);
  const std::vector<int> e = idempotents(cat, is);
  const std::vector<int> tau_table = tau(cat, is);

  // transition morphisms and their groupoid inverses
  std::vector<int> trans(cat.n_objects), trans_inv(cat.n_objects);
  for (int i = 0; i < cat.n_objects; ++i) {
    trans[i] = i == 0 ? e[0] : is.slot(0, i).front();
    trans_inv[i] = -1;
    for (int u : is.slot(i, 0))
      if (cat.compose(u, trans[i]) == e[0] && cat.compose(trans[i], u) == e[i]) {
        trans_inv[i] = u;
        break;
      }
    if (trans_inv[i] == -1) throw std::logic_error("group_model: transition morphism has no inverse");
  }

  auto element_pos = [&](int m) {
    const auto it = std::lower_bound(model.group.elems.begin(), model.group.elems.end(), m);
    if (it == model.group.elems.end() || *it != m)
      throw std::logic_error("group_model: morphism lands outside S(0,0)");
    return static_cast<int>(it - model.group.elems.begin());
  };
  model.pi.resize(cat.n_morphisms());
  for (int f = 0; f < cat.n_morphisms(); ++f) {
    const int i = cat.dom(f), j = cat.cod(f);
    model.pi[f] = element_pos(cat.compose(trans_inv[j], cat.compose(tau_table[f], trans[i])));
  }

  for (int i = 0; i < cat.n_objects; ++i)
    if (model.pi[cat.identity[i]] != model.group.unit)
      throw std::logic_error("group_model: identity does not map to the unit");
  for (int g = 0; g < cat.n_morphisms(); ++g)
    for (int f = 0; f < cat.n_morphisms(); ++f) {
      const int h = cat.compose(g, f);
      if (h != -1 && model.pi[h] != model.group.mult(model.pi[g], model.pi[f]))
        throw std::logic_error("group_model: collapse is not a functor");
    }

  std::vector<std::vector<int>> table(model.group.order, std::vector<int>(model.group.order));
  std::vector<std::string> names;
  for (int a = 0; a < model.group.order; ++a) {
    names.push_back(cat.name(model.group.elems[a]));
    for (int b = 0; b < model.group.order; ++b) table[a][b] = model.group.mult(a, b);
  }
  model.group_cat = from_monoid_table(table, names);
  return model;
}

VectFunctor regular_representation(const GroupModel& model, uint32_t p) {
  const int order = model.group.order;
  VectFunctor F;
  F.p = p;
  F.dim = {order};
  F.action.reserve(order);
  for (int k = 0; k < order; ++k) {
    MatrixFp perm(p, order, order);
    for (int h = 0; h < order; ++h) perm.set(model.group.mult(k, h), h, 1);
    F.action.push_back(std::move(perm));
  }
  return F;
}

VectFunctor trivial_functor(const FinCategory& cat, uint32_t p) {
  VectFunctor F;
  F.p = p;
  F.dim.assign(cat.n_objects, 1);
  F.action.assign(cat.n_morphisms(), MatrixFp::identity(p, 1));
  return F;
}

VectFunctor pullback_functor(const FinCategory& cat, const GroupModel& model, const VectFunctor& on_group) {
  VectFunctor F;
  F.p = on_group.p;
  F.dim.assign(cat.n_objects, on_group.dim[0]);
  F.action.reserve(cat.n_morphisms());
  for (int m = 0; m < cat.n_morphisms(); ++m) F.action.push_back(on_group.action[model.pi[m]]);
  return F;
}

std::optional<ModWitness> witness_mod(const FinCategory& cat, uint32_t p) {
  const Verdict verdict = decide_mod(cat, RingSpec::prime_field(p));
  if (verdict.frobenius)
    throw std::invalid_argument("witness_mod: verdict over fp:" + std::to_string(p) + " is positive");
  if (connected_components(cat).count != 1)
    throw std::invalid_argument("witness_mod: category is not connected");

  const FindIsResult found = find_is(cat);
  if (!found.preferred) return std::nullopt;  // no invariant system: probe evidence instead

  ModWitness witness;
  witness.model = group_model(cat, *found.preferred);
  witness.problem.functors.push_back(pullback_functor(cat, witness.model, regular_representation(witness.model, p)));
  witness.problem.functors.push_back(trivial_functor(cat, p));
  VectNatTransform augmentation;
  for (int i = 0; i < cat.n_objects; ++i) {
    MatrixFp ones(p, 1, witness.model.group.order);
    for (int c = 0; c < witness.model.group.order; ++c) ones.set(0, c, 1);
    augmentation.component.push_back(std::move(ones));
  }
  witness.problem.transforms.push_back({0, 1, std::move(augmentation)});
  witness.solution = solve_naturality(cat, witness.problem);
  return witness;
}

// ------------------------------ probes -------------------------------------

FreeProbe free_probe(const FinCategory& cat, int i, uint32_t p) {
  const HomIndex hom = hom_index(cat);
  VectFunctor F;
  F.p = p;
  F.dim.resize(cat.n_objects);
  for (int j = 0; j < cat.n_objects; ++j) F.dim[j] = static_cast<int>(hom(i, j).size());
  F.action.reserve(cat.n_morphisms());
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    const auto& from = hom(i, cat.dom(m));
    const auto& to = hom(i, cat.cod(m));
    MatrixFp a(p, static_cast<int>(to.size()), static_cast<int>(from.size()));
    for (size_t c = 0; c < from.size(); ++c) {
      const int composed = cat.compose(m, from[c]);
      const auto it = std::lower_bound(to.begin(), to.end(), composed);
      a.set(static_cast<int>(it - to.begin()), static_cast<int>(c), 1);
    }
    F.action.push_back(std::move(a));
  }

  const VectLimit lim = limit_vect(cat, F);
  FreeProbe probe;
  probe.base = i;
  probe.dim = lim.dim();
  if (probe.dim == 1) {
    probe.supports.resize(cat.n_objects);
    for (int j = 0; j < cat.n_objects; ++j)
      for (int t = 0; t < F.dim[j]; ++t)
        if (lim.basis.at(lim.offset[j] + t, 0) != 0) probe.supports[j].push_back(hom(i, j)[t]);
  }
  return probe;
}

FreeProbeFamily free_probe_family(const FinCategory& cat, uint32_t p) {
  FreeProbeFamily out;
  std::vector<FreeProbe> probes;
  for (int i = 0; i < cat.n_objects; ++i) {
    probes.push_back(free_probe(cat, i, p));
    out.dims.push_back(probes.back().dim);
  }
  for (int d : out.dims)
    if (d != 1) return out;
  InvariantSystem family;
  family.n_objects = cat.n_objects;
  family.sets.assign(static_cast<size_t>(cat.n_objects) * cat.n_objects, {});
  for (int i = 0; i < cat.n_objects; ++i)
    for (int j = 0; j < cat.n_objects; ++j) family.slot(i, j) = probes[i].supports[j];
  out.family = std::move(family);
  return out;
}

// ----------------------------- sampling ------------------------------------

std::optional<VectFunctor> sample_vect_functor(const FinCategory& cat, const SpanningData& span, Rng& rng,
                                               uint32_t p, int max_dim, int max_retries) {
  const int nm = cat.n_morphisms();
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    VectFunctor F;
    F.p = p;
    F.dim.resize(cat.n_objects);
    for (int i = 0; i < cat.n_objects; ++i) F.dim[i] = rng.below(max_dim + 1);
    F.action.assign(nm, MatrixFp());
    for (int m : span.order) {
      const auto& d = span.derivation[m];
      const int rows = F.dim[cat.cod(m)], cols = F.dim[cat.dom(m)];
      switch (d.kind) {
        case SpanningData::Derivation::Kind::identity:
          F.action[m] = MatrixFp::identity(p, rows);
          break;
        case SpanningData::Derivation::Kind::generator: {
          MatrixFp a(p, rows, cols);
          for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) a.set(r, c, static_cast<uint32_t>(rng.below(static_cast<int>(p))));
          F.action[m] = std::move(a);
          break;
        }
        case SpanningData::Derivation::Kind::composite:
          F.action[m] = F.action[d.g] * F.action[d.f];
          break;
      }
    }
    if (!check_vect_functor(cat, F)) return F;
  }
  return std::nullopt;
}

VectNatTransform sample_vect_nat(const FinCategory& cat, const VectFunctor& F, const VectFunctor& G, Rng& rng) {
  // unknowns: entries of every component, row-major per object
  std::vector<int> var_offset(cat.n_objects + 1, 0);
  for (int i = 0; i < cat.n_objects; ++i) var_offset[i + 1] = var_offset[i] + G.dim[i] * F.dim[i];
  const int n_vars = var_offset[cat.n_objects];
  const uint32_t p = F.p;

  int n_equations = 0;
  for (int m = 0; m < cat.n_morphisms(); ++m)
    if (!cat.is_identity(m)) n_equations += G.dim[cat.cod(m)] * F.dim[cat.dom(m)];
  MatrixFp system(p, n_equations, n_vars);
  int row = 0;
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    if (cat.is_identity(m)) continue;
    const int i = cat.dom(m), j = cat.cod(m);
    // eta_j F(m) - G(m) eta_i = 0, entry (r, c)
    for (int r = 0; r < G.dim[j]; ++r)
      for (int c = 0; c < F.dim[i]; ++c, ++row) {
        for (int b = 0; b < F.dim[j]; ++b)
          system.set(row, var_offset[j] + r * F.dim[j] + b,
                     static_cast<uint32_t>((static_cast<uint64_t>(system.at(row, var_offset[j] + r * F.dim[j] + b)) + F.action[m].at(b, c)) % p));
        for (int a = 0; a < G.dim[i]; ++a)
          system.set(row, var_offset[i] + a * F.dim[i] + c,
                     static_cast<uint32_t>((system.at(row, var_offset[i] + a * F.dim[i] + c) + static_cast<uint64_t>(p - 1) * G.action[m].at(r, a)) % p));
      }
  }
  const MatrixFp space = nullspace(system);
  std::vector<uint32_t> x(n_vars, 0);
  for (int c = 0; c < space.cols(); ++c) {
    const uint32_t coeff = static_cast<uint32_t>(rng.below(static_cast<int>(p)));
    if (coeff == 0) continue;
    for (int v = 0; v < n_vars; ++v) x[v] = (x[v] + static_cast<uint64_t>(coeff) * space.at(v, c)) % p;
  }
  VectNatTransform eta;
  for (int i = 0; i < cat.n_objects; ++i) {
    MatrixFp component(p, G.dim[i], F.dim[i]);
    for (int r = 0; r < G.dim[i]; ++r)
      for (int c = 0; c < F.dim[i]; ++c) component.set(r, c, x[var_offset[i] + r * F.dim[i] + c]);
    eta.component.push_back(std::move(component));
  }
  return eta;
}

// ----------------------------- oracle run ----------------------------------

namespace {

VectFunctor empty_vs_line(const FinCategory& cat, const std::vector<bool>& zero_side, uint32_t p) {
  VectFunctor F;
  F.p = p;
  F.dim.resize(cat.n_objects);
  for (int i = 0; i < cat.n_objects; ++i) F.dim[i] = zero_side[i] ? 0 : 1;
  F.action.reserve(cat.n_morphisms());
  for (int m = 0; m < cat.n_morphisms(); ++m) {
    MatrixFp a(p, F.dim[cat.cod(m)], F.dim[cat.dom(m)]);
    if (a.rows() == 1 && a.cols() == 1) a.set(0, 0, 1);
    F.action.push_back(std::move(a));
  }
  return F;
}

}  // namespace

ModOracleReport sample_check_mod(const FinCategory& cat, uint32_t p, const ModOracleOptions& options) {
  ModOracleReport report;
  report.p = p;
  report.options = options;
  report.verdict = decide_mod(cat, RingSpec::prime_field(p));

  if (report.verdict.frobenius) {
    const SpanningData span = spanning_data(cat);
    std::vector<std::optional<VectFunctor>> samples(options.n_samples);
    for_each_index(options.n_samples, options.mode, [&](int64_t k) {
      Rng rng = Rng::stream(options.seed, static_cast<uint64_t>(k));
      samples[k] = sample_vect_functor(cat, span, rng, p, options.max_dim, options.max_retries);
    });
    for (int k = 0; k < options.n_samples; ++k)
      if (!samples[k])
        throw std::runtime_error("sample_check_mod: functor sampling failed after " +
                                 std::to_string(options.max_retries) + " retries (sample " + std::to_string(k) + ")");
    report.n_generated = options.n_samples;

    std::vector<VectLimit> lims(options.n_samples);
    std::vector<VectColimit> colims(options.n_samples);
    std::vector<MatrixFp> canonicals(options.n_samples);
    std::vector<uint8_t> invertible_flags(options.n_samples, 0);
    for_each_index(options.n_samples, options.mode, [&](int64_t k) {
      lims[k] = limit_vect(cat, *samples[k]);
      colims[k] = colimit_vect(cat, *samples[k]);
      canonicals[k] = canonical_map_vect(cat, *samples[k], lims[k], colims[k]);
      invertible_flags[k] = canonicals[k].is_invertible() ? 1 : 0;
    });
    for (int k = 0; k < options.n_samples; ++k) {
      if (invertible_flags[k]) {
        ++report.n_canonical_invertible;
      } else {
        report.consistent = false;
        report.failures.push_back("sample " + std::to_string(k) + ": canonical map is not invertible (" +
                                  std::to_string(lims[k].dim()) + " -> " + std::to_string(colims[k].dim()) + ")");
      }
    }

    // naturality of the canonical map along sampled transforms
    std::vector<std::optional<std::string>> nat_failures(std::max(0, options.n_samples - 1));
    for_each_index(options.n_samples - 1, options.mode, [&](int64_t k) {
      Rng rng = Rng::stream(options.seed, static_cast<uint64_t>(options.n_samples + k));
      const VectNatTransform eta = sample_vect_nat(cat, *samples[k], *samples[k + 1], rng);
      if (const auto err = check_vect_nat(cat, *samples[k], *samples[k + 1], eta)) {
        nat_failures[k] = "sampled transform is not natural: " + *err;
        return;
      }
      const MatrixFp lim_eta = nat_limit_map(cat, *samples[k], *samples[k + 1], eta, lims[k], lims[k + 1]);
      const MatrixFp colim_eta = nat_colimit_map(cat, *samples[k], *samples[k + 1], eta, colims[k], colims[k + 1]);
      if (!(colim_eta * canonicals[k] == canonicals[k + 1] * lim_eta))
        nat_failures[k] = "canonical map is not natural for the sampled transform";
    });
    for (int k = 0; k + 1 < options.n_samples; ++k) {
      ++report.n_transforms_checked;
      if (nat_failures[k]) {
        report.consistent = false;
        report.failures.push_back("sample pair " + std::to_string(k) + ": " + *nat_failures[k]);
      }
    }

    // group-reducible positives: pull samples back along the collapse and
    // check that averaging really inverts the canonical map
    const auto* cert = report.verdict.cert<CertInvariantSystems>();
    if (connected_components(cat).count == 1 && cert && !cert->per_component.empty()) {
      const GroupModel model = group_model(cat, cert->per_component[0].is);
      const SpanningData group_span = spanning_data(model.group_cat);
      std::vector<std::optional<std::string>> group_failures(options.n_samples);
      std::vector<uint8_t> pulled_ok(options.n_samples, 0), norm_ok(options.n_samples, 0);
      for_each_index(options.n_samples, options.mode, [&](int64_t k) {
        Rng rng = Rng::stream(options.seed, static_cast<uint64_t>(2 * options.n_samples + k));
        const auto on_group = sample_vect_functor(model.group_cat, group_span, rng, p, options.max_dim,
                                                  options.max_retries);
        if (!on_group) {
          group_failures[k] = "group-representation sampling failed";
          return;
        }
        const VectFunctor pulled = pullback_functor(cat, model, *on_group);
        if (const auto err = check_vect_functor(cat, pulled)) {
          group_failures[k] = "pullback is not functorial: " + *err;
          return;
        }
        pulled_ok[k] = canonical_map_vect(cat, pulled).is_invertible() ? 1 : 0;
        if (!pulled_ok[k]) {
          group_failures[k] = "canonical map of a pulled-back representation is not invertible";
          return;
        }
        const NormSplitting ns = norm_splitting(model.group_cat, *on_group);
        const MatrixFp can = canonical_map_vect(model.group_cat, *on_group);
        const bool inverts = can * ns.colim_to_lim == MatrixFp::identity(p, can.rows()) &&
                             ns.colim_to_lim * can == MatrixFp::identity(p, can.cols());
        norm_ok[k] = inverts ? 1 : 0;
        if (!inverts) group_failures[k] = "averaging map does not invert the canonical map";
      });
      for (int k = 0; k < options.n_samples; ++k) {
        ++report.n_pullback_checked;
        report.n_pullback_invertible += pulled_ok[k];
        ++report.n_norm_checked;
        report.n_norm_inverts += norm_ok[k];
        if (group_failures[k]) {
          report.consistent = false;
          report.failures.push_back("group sample " + std::to_string(k) + ": " + *group_failures[k]);
        }
      }
    }
    return report;
  }

  // negative verdicts: executable evidence depends on the certificate
  if (const auto* cert = report.verdict.cert<CertNotStronglyConnected>()) {
    const ComponentPartition parts = connected_components(cat);
    const SubCategory sub = component_subcategory(cat, parts, cert->component);
    std::vector<bool> zero_side(sub.cat.n_objects, false);
    for (size_t k = 0; k < sub.object_map.size(); ++k)
      zero_side[k] = std::find(cert->a.begin(), cert->a.end(), sub.object_map[k]) != cert->a.end();
    const VectFunctor witness = empty_vs_line(sub.cat, zero_side, p);
    const int lim_dim = limit_vect(sub.cat, witness).dim();
    const int colim_dim = colimit_vect(sub.cat, witness).dim();
    report.witness_ran = true;
    report.witness_reason = "zero modules on the source part: limit dimension " + std::to_string(lim_dim) +
                            ", colimit dimension " + std::to_string(colim_dim);
    if (lim_dim == colim_dim) {
      report.consistent = false;
      report.failures.push_back("dimension witness failed: limit and colimit dimensions agree");
    }
    return report;
  }
  if (const auto* cert = report.verdict.cert<CertNoInvariantSystem>()) {
    const ComponentPartition parts = connected_components(cat);
    const SubCategory sub = component_subcategory(cat, parts, cert->component);
    const FreeProbeFamily probes = free_probe_family(sub.cat, p);
    report.probe_dims = probes.dims;
    report.witness_ran = true;
    report.witness_reason = "free-functor probe evidence (no finite witness diagram is claimed)";
    if (probes.family && verify_is(sub.cat, *probes.family).ok) {
      report.consistent = false;
      report.failures.push_back("free probes assembled a verified invariant system, contradicting the verdict");
    }
    return report;
  }
  if (const auto* cert = report.verdict.cert<CertCardinalityNotInvertible>()) {
    const ComponentPartition parts = connected_components(cat);
    const SubCategory sub = component_subcategory(cat, parts, cert->component);
    const auto witness = witness_mod(sub.cat, p);
    if (!witness) {
      report.consistent = false;
      report.failures.push_back("expected an infeasible naturality system but no invariant system was found");
      return report;
    }
    report.witness_ran = true;
    report.witness_reason = witness->solution.reason;
    if (witness->solution.result == Feasibility::inconclusive) ++report.n_inconclusive;
    if (witness->solution.result != Feasibility::infeasible) {
      report.consistent = false;
      report.failures.push_back("naturality system for the regular representation was not infeasible: " +
                                witness->solution.reason);
    }
    return report;
  }
  return report;  // empty category cannot reach here: the module verdict is positive
}

}  // namespace frobcat
