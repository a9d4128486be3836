#include "dpcox/cox_oracle.hpp"

#include "dpcox/errors.hpp"
#include "dpcox/oracle/linear_algebra.hpp"

namespace dpcox {

std::string to_string(Arithmetic a) { return a == Arithmetic::EXACT ? "exact" : "prime"; }

Arithmetic parse_arithmetic(std::string_view text) {
  if (text == "exact") return Arithmetic::EXACT;
  if (text == "prime") return Arithmetic::PRIME;
  throw ValidationError("unknown arithmetic mode: " + std::string(text));
}

std::vector<int> multiplicities_of(const DivisorClass& d) {
  std::vector<int> out;
  for (int i = 1; i <= d.rank(); ++i) out.push_back(d[i] < 0 ? static_cast<int>(-d[i]) : 0);
  return out;
}

PlaneFormBasis component_basis(const DivisorClass& d, const PointConfiguration& pts) {
  if (d.rank() != pts.rank()) throw ContractViolation("divisor and configuration ranks differ");
  PlaneFormBasis out;
  out.degree = static_cast<int>(d[0]);
  out.mults = multiplicities_of(d);
  if (out.degree < 0) {
    out.basis = DenseMatrix<mpz_class>(0, 0);
    return out;
  }
  out.basis = integer_kernel(condition_matrix_exact(out.degree, out.mults, pts));
  return out;
}

SectionModel distinguished_section(const ExceptionalCurve& c, const PointConfiguration& pts) {
  const auto basis = component_basis(c.divisor, pts);
  if (basis.dimension() != 1) {
    throw GeneralPositionError("interpolation space of " + c.label.to_string() + " has dimension " +
                               std::to_string(basis.dimension()));
  }
  SectionModel out{c, basis.degree, DenseVector<mpq_class>(basis.basis.rows())};
  Eigen::Index lead = 0;
  while (sgn(basis.basis(lead, 0)) == 0) ++lead;
  for (Eigen::Index i = 0; i < basis.basis.rows(); ++i) {
    out.form(i) = mpq_class(basis.basis(i, 0), basis.basis(lead, 0));
    out.form(i).canonicalize();
  }
  return out;
}

void for_each_monomial(const DivisorClass& d, const SurfaceModel& model,
                       const std::function<bool(const CurveMonomial&)>& visit) {
  if (d.rank() != model.rank()) throw ContractViolation("divisor and model ranks differ");
  CurveMonomial current;
  bool stop = false;
  std::function<void(const DivisorClass&, int)> walk = [&](const DivisorClass& rest, int first) {
    if (stop) return;
    if (rest.is_zero()) {
      if (!visit(current)) stop = true;
      return;
    }
    if (anticanonical_degree(rest) <= 0 || rest[0] < 0) return;
    // A curve meeting the rest negatively is a component of every
    // decomposition, so later indices cannot come next.
    const auto products = model.products(rest);
    int forced = -1;
    for (int i = 0; i < model.size(); ++i)
      if (products(i) < 0) {
        forced = i;
        break;
      }
    if (forced >= 0 && (forced < first || !is_effective(rest, model))) return;
    const int last = forced >= 0 ? forced : model.size() - 1;
    for (int i = first; i <= last && !stop; ++i) {
      current.push_back(i);
      walk(rest - model.curve(i).divisor, i);
      current.pop_back();
    }
  };
  walk(d, 0);
}

std::vector<CurveMonomial> monomials_of_multidegree(const DivisorClass& d, const SurfaceModel& model) {
  std::vector<CurveMonomial> out;
  for_each_monomial(d, model, [&out](const CurveMonomial& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

namespace {

template <class S>
DenseVector<S> one_form() {
  DenseVector<S> v(1);
  v(0) = S(1);
  return v;
}

template <class S>
DenseVector<S> evaluate(const CurveMonomial& mono, const std::vector<DenseVector<S>>& forms,
                        const SurfaceModel& model) {
  DenseVector<S> acc = one_form<S>();
  int deg = 0;
  for (int c : mono) {
    const int cd = static_cast<int>(model.curve(c).divisor[0]);
    acc = multiply_forms<S>(acc, deg, forms[static_cast<std::size_t>(c)], cd);
    deg += cd;
  }
  return acc;
}

// Rows kept with a unit at their pivot, each reduced against the earlier ones.
class IncrementalEchelon {
 public:
  bool insert(DenseVector<ModP> v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const ModP f = v(pivots_[k]);
      if (!f.is_zero()) v -= f * rows_[k];
    }
    Eigen::Index p = 0;
    while (p < v.size() && v(p).is_zero()) ++p;
    if (p == v.size()) return false;
    v *= v(p).inverse();
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }
  int rank() const noexcept { return static_cast<int>(rows_.size()); }

 private:
  std::vector<DenseVector<ModP>> rows_;
  std::vector<Eigen::Index> pivots_;
};

// Rows with a single nonzero entry (conditions at coordinate points) pin
// their column; the rank is the number of pinned columns plus the rank of
// the other rows on the remaining columns.
int rank_with_singletons(const DenseMatrix<ModP>& m) {
  std::vector<bool> pinned(static_cast<std::size_t>(m.cols()), false);
  std::vector<Eigen::Index> dense_rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Eigen::Index count = 0, at = -1;
    for (Eigen::Index j = 0; j < m.cols() && count < 2; ++j)
      if (!m(i, j).is_zero()) {
        ++count;
        at = j;
      }
    if (count == 1) {
      pinned[static_cast<std::size_t>(at)] = true;
    } else if (count > 1) {
      dense_rows.push_back(i);
    }
  }
  std::vector<Eigen::Index> live;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (!pinned[static_cast<std::size_t>(j)]) live.push_back(j);
  const int fixed = static_cast<int>(m.cols() - static_cast<Eigen::Index>(live.size()));
  if (live.empty() || dense_rows.empty()) return fixed;
  DenseMatrix<ModP> rest(static_cast<Eigen::Index>(dense_rows.size()), static_cast<Eigen::Index>(live.size()));
  for (std::size_t i = 0; i < dense_rows.size(); ++i)
    for (std::size_t j = 0; j < live.size(); ++j)
      rest(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(dense_rows[i], live[j]);
  return fixed + rank_of<ModP>(rest);
}

int rank_any(const DenseMatrix<ModP>& m) { return rank_of<ModP>(m); }
int rank_any(const DenseMatrix<mpz_class>& m) { return bareiss_rank(m); }

template <class S>
struct Strand {
  DenseMatrix<S> d1;  // monomials(d0) x A1
  DenseMatrix<S> d2;  // ambient A1 x A2
  std::array<int, 3> dims{};
};

// basis_of(d) returns the component basis of d (monomial coordinates) or an
// empty matrix when d0 < 0.
template <class S, class BasisOf>
Strand<S> assemble(const DivisorClass& d, const SurfaceModel& model, const std::vector<DenseVector<S>>& forms,
                   BasisOf basis_of) {
  const int n = model.size();
  const int d0 = static_cast<int>(d[0]);
  auto degree_of = [&](int c) { return static_cast<int>(model.curve(c).divisor[0]); };
  Strand<S> out;
  out.dims[0] = static_cast<int>(basis_of(d).cols());

  std::vector<DenseMatrix<S>> block(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> offset(static_cast<std::size_t>(n), -1);
  Eigen::Index ambient = 0;
  for (int c = 0; c < n; ++c) {
    block[static_cast<std::size_t>(c)] = basis_of(d - model.curve(c).divisor);
    out.dims[1] += static_cast<int>(block[static_cast<std::size_t>(c)].cols());
    if (d0 - degree_of(c) >= 0) {
      offset[static_cast<std::size_t>(c)] = ambient;
      ambient += monomial_count(d0 - degree_of(c));
    }
  }

  const Eigen::Index top = d0 >= 0 ? monomial_count(d0) : 0;
  out.d1 = DenseMatrix<S>::Zero(top, out.dims[1]);
  Eigen::Index col = 0;
  for (int c = 0; c < n; ++c) {
    const auto& b = block[static_cast<std::size_t>(c)];
    for (Eigen::Index k = 0; k < b.cols(); ++k, ++col) {
      DenseVector<S> s = b.col(k);
      out.d1.col(col) = multiply_forms<S>(forms[static_cast<std::size_t>(c)], degree_of(c), s, d0 - degree_of(c));
    }
  }

  std::vector<DenseVector<S>> columns;
  for (int c = 0; c < n; ++c)
    for (int e = c + 1; e < n; ++e) {
      const DenseMatrix<S> t = basis_of(d - model.curve(c).divisor - model.curve(e).divisor);
      if (t.cols() == 0) continue;
      const int td = d0 - degree_of(c) - degree_of(e);
      for (Eigen::Index k = 0; k < t.cols(); ++k) {
        DenseVector<S> tk = t.col(k);
        DenseVector<S> v = DenseVector<S>::Zero(ambient);
        // d2(u_ce) = x_c u_e - x_e u_c
        const auto xe = multiply_forms<S>(forms[static_cast<std::size_t>(c)], degree_of(c), tk, td);
        const auto xc = multiply_forms<S>(forms[static_cast<std::size_t>(e)], degree_of(e), tk, td);
        v.segment(offset[static_cast<std::size_t>(e)], xe.size()) += xe;
        v.segment(offset[static_cast<std::size_t>(c)], xc.size()) -= xc;
        columns.push_back(std::move(v));
      }
    }
  out.dims[2] = static_cast<int>(columns.size());
  out.d2 = DenseMatrix<S>::Zero(ambient, out.dims[2]);
  for (std::size_t k = 0; k < columns.size(); ++k) out.d2.col(static_cast<Eigen::Index>(k)) = columns[k];

  // d1 on the ambient space composed with d2 must vanish.
  for (Eigen::Index k = 0; k < out.d2.cols(); ++k) {
    DenseVector<S> image = DenseVector<S>::Zero(top);
    for (int c = 0; c < n; ++c) {
      if (offset[static_cast<std::size_t>(c)] < 0) continue;
      const int bd = d0 - degree_of(c);
      DenseVector<S> part = out.d2.col(k).segment(offset[static_cast<std::size_t>(c)], monomial_count(bd));
      bool nonzero = false;
      for (Eigen::Index i = 0; i < part.size() && !nonzero; ++i) nonzero = !is_zero(part(i));
      if (nonzero) image += multiply_forms<S>(forms[static_cast<std::size_t>(c)], degree_of(c), part, bd);
    }
    for (Eigen::Index i = 0; i < image.size(); ++i)
      if (!is_zero(image(i))) throw InternalConsistencyError("d1 o d2 != 0 in degree " + d.to_string());
  }
  return out;
}

}  // namespace

CoxOracle::CoxOracle(PointConfiguration pts, SurfaceModel model, Arithmetic arithmetic)
    : pts_(std::move(pts)), model_(std::move(model)), arithmetic_(arithmetic) {
  if (pts_.rank() != model_.rank()) throw ContractViolation("configuration and model ranks differ");
  require_general_position(pts_);
  for (const auto& c : model_.curves()) {
    sections_.push_back(distinguished_section(c, pts_));
    const auto basis = component_basis(c.divisor, pts_);
    integer_forms_.push_back(basis.basis.col(0));
    modular_forms_.push_back(reduce_mod_p(basis.basis).col(0));
  }
}

int CoxOracle::interpolation_dimension(const DivisorClass& d) {
  if (d.rank() != model_.rank()) throw ContractViolation("divisor and model ranks differ");
  return dimension_of(static_cast<int>(d[0]), multiplicities_of(d));
}

int CoxOracle::dimension_of(int degree, const std::vector<int>& mults) {
  if (degree < 0) return 0;
  Key key{degree, mults};
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const int dim = compute_dimension(degree, mults);
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(std::move(key), dim);
  return dim;
}

int CoxOracle::compute_dimension(int degree, const std::vector<int>& mults) {
  const int cols = monomial_count(degree);
  const auto conditions = condition_matrix_mod_p(degree, mults, pts_);
  const int rank_p = rank_with_singletons(conditions);
  // rank mod p <= rank over Q, so cols - rank_p bounds the dimension above.
  const int upper = cols - rank_p;
  if (arithmetic_ == Arithmetic::PRIME || upper == 0 || rank_p == conditions.rows()) return upper;

  // Products of distinguished forms lie in the space: their rank mod p is a
  // lower bound.
  std::vector<DivisorClass::Coefficient> coeffs{degree};
  for (int m : mults) coeffs.push_back(-m);
  const DivisorClass target(model_.rank(), coeffs);
  IncrementalEchelon ech;
  for_each_monomial(target, model_, [&](const CurveMonomial& mono) {
    ech.insert(evaluate<ModP>(mono, modular_forms_, model_));
    return ech.rank() < upper;
  });
  if (ech.rank() == upper) return upper;
  return cols - bareiss_rank(condition_matrix_exact(degree, mults, pts_));
}

IdealDimension CoxOracle::ideal_dim(const DivisorClass& d) {
  if (d.rank() != model_.rank()) throw ContractViolation("divisor and model ranks differ");
  const auto monos = monomials_of_multidegree(d, model_);
  IdealDimension out;
  out.monomial_count = static_cast<int>(monos.size());
  if (monos.empty()) return out;
  const int d0 = static_cast<int>(d[0]);
  const auto mults = multiplicities_of(d);
  const auto conditions = condition_matrix_mod_p(d0, mults, pts_);
  DenseMatrix<ModP> eval(monomial_count(d0), out.monomial_count);
  for (std::size_t k = 0; k < monos.size(); ++k) {
    const auto v = evaluate<ModP>(monos[k], modular_forms_, model_);
    for (Eigen::Index i = 0; i < conditions.rows(); ++i) {
      ModP acc = 0;
      for (Eigen::Index j = 0; j < v.size(); ++j) acc += conditions(i, j) * v(j);
      if (!acc.is_zero()) throw InternalConsistencyError("monomial outside its component space");
    }
    eval.col(static_cast<Eigen::Index>(k)) = v;
  }
  out.rank = rank_of<ModP>(eval);
  if (arithmetic_ == Arithmetic::PRIME) {
    out.certified = false;
  } else if (out.rank != dimension_of(d0, mults)) {
    DenseMatrix<mpz_class> exact(monomial_count(d0), out.monomial_count);
    for (std::size_t k = 0; k < monos.size(); ++k)
      exact.col(static_cast<Eigen::Index>(k)) = evaluate<mpz_class>(monos[k], integer_forms_, model_);
    out.rank = bareiss_rank(exact);
  }
  out.ideal_dim = out.monomial_count - out.rank;
  return out;
}

KoszulStrandReport CoxOracle::strand_modular(const DivisorClass& d, bool& usable) {
  usable = true;
  auto basis_of = [&](const DivisorClass& c) -> DenseMatrix<ModP> {
    if (c[0] < 0) return DenseMatrix<ModP>(0, 0);
    const auto mults = multiplicities_of(c);
    auto k = kernel_basis<ModP>(condition_matrix_mod_p(static_cast<int>(c[0]), mults, pts_));
    if (arithmetic_ == Arithmetic::EXACT && k.cols() != dimension_of(static_cast<int>(c[0]), mults)) usable = false;
    return k;
  };
  const auto strand = assemble<ModP>(d, model_, modular_forms_, basis_of);
  KoszulStrandReport out;
  out.divisor = d;
  out.dims = strand.dims;
  out.rank_d1 = rank_any(strand.d1);
  out.rank_d2 = rank_any(strand.d2);
  out.b1 = strand.dims[1] - out.rank_d1 - out.rank_d2;
  return out;
}

KoszulStrandReport CoxOracle::strand_exact(const DivisorClass& d) {
  auto basis_of = [&](const DivisorClass& c) -> DenseMatrix<mpz_class> {
    if (c[0] < 0) return DenseMatrix<mpz_class>(0, 0);
    return integer_kernel(condition_matrix_exact(static_cast<int>(c[0]), multiplicities_of(c), pts_));
  };
  const auto strand = assemble<mpz_class>(d, model_, integer_forms_, basis_of);
  KoszulStrandReport out;
  out.divisor = d;
  out.dims = strand.dims;
  out.rank_d1 = rank_any(strand.d1);
  out.rank_d2 = rank_any(strand.d2);
  out.b1 = strand.dims[1] - out.rank_d1 - out.rank_d2;
  return out;
}

KoszulStrandReport CoxOracle::koszul_b1(const DivisorClass& d) {
  if (d.rank() != model_.rank()) throw ContractViolation("divisor and model ranks differ");
  bool usable = true;
  KoszulStrandReport out = strand_modular(d, usable);
  out.seed = pts_.seed();
  out.arithmetic = arithmetic_;
  if (arithmetic_ == Arithmetic::PRIME) {
    out.certified = false;
    return out;
  }
  // Mod p every rank is a lower bound and b1 an upper bound; the values are
  // exact when b1 vanishes or both ranks reach their ceilings.
  if (usable) {
    const int a0 = out.dims[0], a1 = out.dims[1], a2 = out.dims[2];
    const bool d1_full = out.rank_d1 == std::min(a0, a1);
    const bool d2_full = out.rank_d2 == std::min(a2, a1 - out.rank_d1);
    if (out.b1 == 0 || (d1_full && d2_full)) return out;
  }
  out = strand_exact(d);
  out.seed = pts_.seed();
  out.arithmetic = arithmetic_;
  return out;
}

SectionsCheck CoxOracle::check_27_sections() {
  if (model_.rank() != 7) throw UnsupportedRank("the 27-sections check needs rank 7");
  std::vector<DenseVector<mpz_class>> products;
  const auto conditions = condition_matrix_exact(3, std::vector<int>(7, 1), pts_);
  for (int i = 0; i < model_.size(); ++i) {
    const int j = dual_index(i, model_);
    if (j < i) continue;
    auto v = evaluate<mpz_class>({i, j}, integer_forms_, model_);
    for (Eigen::Index r = 0; r < conditions.rows(); ++r) {
      mpz_class acc = 0;
      for (Eigen::Index k = 0; k < v.size(); ++k) acc += conditions(r, k) * v(k);
      if (sgn(acc) != 0) throw InternalConsistencyError("dual-pair product is not an anticanonical section");
    }
    products.push_back(std::move(v));
  }
  auto rank_without = [&](std::size_t skip) {
    const Eigen::Index rows = static_cast<Eigen::Index>(products.size() - (skip < products.size() ? 1 : 0));
    DenseMatrix<mpz_class> m(rows, 10);
    Eigen::Index r = 0;
    for (std::size_t k = 0; k < products.size(); ++k) {
      if (k == skip) continue;
      m.row(r++) = products[k].transpose();
    }
    return bareiss_rank(m);
  };
  SectionsCheck out;
  out.full_rank = rank_without(products.size());
  out.holds = products.size() == 28;
  for (std::size_t k = 0; k < products.size(); ++k) {
    out.subset_ranks.push_back(rank_without(k));
    if (out.subset_ranks.back() != 3) out.holds = false;
  }
  return out;
}

IdealDimension ideal_dim(const DivisorClass& d, const PointConfiguration& pts, const SurfaceModel& model) {
  return CoxOracle(pts, model).ideal_dim(d);
}

KoszulStrandReport koszul_b1(const DivisorClass& d, const PointConfiguration& pts, const SurfaceModel& model,
                             Arithmetic arithmetic) {
  return CoxOracle(pts, model, arithmetic).koszul_b1(d);
}

bool verify_27_sections(const PointConfiguration& pts, const SurfaceModel& model) {
  return CoxOracle(pts, model).check_27_sections().holds;
}

}  // namespace dpcox
