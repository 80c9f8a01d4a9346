#include "khoszul/spectral.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "khoszul/errors.hpp"
#include "khoszul/field.hpp"
#include "khoszul/koszul.hpp"
#include "khoszul/parallel.hpp"

namespace khoszul {

std::map<std::pair<int, int>, std::size_t> SpectralPage::entries() const {
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& [idx, n] : weighted) out[{std::get<0>(idx), std::get<1>(idx)}] += n;
  return out;
}

std::map<std::pair<int, int>, std::size_t> SpectralPage::ranks() const {
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& [idx, n] : differential_rank) out[{std::get<0>(idx), std::get<1>(idx)}] += n;
  return out;
}

std::size_t SpectralPage::total() const {
  std::size_t n = 0;
  for (const auto& [idx, d] : weighted) n += d;
  return n;
}

std::string Mismatch::to_string() const {
  const auto [k, t, w] = at;
  return check + " r=" + std::to_string(r) + " (k,t,w)=(" + std::to_string(k) + "," + std::to_string(t) +
         "," + std::to_string(w) + "): expected " + std::to_string(expected) + ", got " +
         std::to_string(actual);
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void require_field(const Coefficients& c) {
  if (!c.is_field()) {
    throw InputError("the spectral sequence is computed over a field; pass --coeff Q or F<p> "
                     "(integral information comes from the koszul subcommand)");
  }
}

// Subquotient bookkeeping for one filtered complex over a field.
template <class Field>
class Filtered {
 public:
  using Matrix = DenseMatrix<Field>;

  Filtered(const Field& f, const FreeChainComplex& c) : f_(f) {
    for (const auto& [g, piece] : c.pieces()) {
      Piece& p = pieces_[g];
      for (auto gen : piece.generators) p.filt.push_back(c.filtration()[gen]);
      p.d_out = to_field(f, c.d_out(g));
      p.d_in = to_field(f, c.d_in(g));
    }
  }

  // Z_r^p = {x in F^p : dx in F^{p+r}} inside piece g, as independent columns.
  Matrix cycles(Grading g, int r, int p) const {
    auto it = pieces_.find(g);
    if (it == pieces_.end()) return Matrix(f_, 0, 0);
    const Piece& piece = it->second;
    std::vector<std::size_t> cols, rows;
    for (std::size_t j = 0; j < piece.filt.size(); ++j)
      if (piece.filt[j] >= p) cols.push_back(j);
    if (auto next = pieces_.find({g.degree + 1, g.quantum}); next != pieces_.end()) {
      for (std::size_t i = 0; i < next->second.filt.size(); ++i)
        if (next->second.filt[i] < p + r) rows.push_back(i);
    }
    Matrix kernel = nullspace(f_, select(f_, piece.d_out, rows, cols));
    Matrix out(f_, piece.filt.size(), kernel.cols());
    for (std::size_t a = 0; a < cols.size(); ++a)
      for (std::size_t b = 0; b < kernel.cols(); ++b) out(cols[a], b) = kernel(a, b);
    return out;
  }

  // B_r^p = Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}.
  Matrix boundaries(Grading g, int r, int p) const {
    auto it = pieces_.find(g);
    if (it == pieces_.end()) return Matrix(f_, 0, 0);
    Matrix lower = cycles(g, r - 1, p + 1);
    Matrix from = cycles({g.degree - 1, g.quantum}, r - 1, p - r + 1);
    if (from.rows() == 0) return lower;
    return hconcat(f_, lower, multiply(f_, it->second.d_in, from));
  }

  // dim (Z cap F^p) / (Z cap F^{p+1} + B cap F^p): the associated graded of H.
  std::size_t graded_homology(Grading g, int p) const {
    auto it = pieces_.find(g);
    if (it == pieces_.end()) return 0;
    const Piece& piece = it->second;
    const int big = 1 << 20;
    Matrix z = cycles(g, big, p);
    Matrix z_next = cycles(g, big, p + 1);
    Matrix b(f_, piece.filt.size(), 0);
    if (piece.d_in.cols() > 0) {
      std::vector<std::size_t> low;
      for (std::size_t i = 0; i < piece.filt.size(); ++i)
        if (piece.filt[i] < p) low.push_back(i);
      Matrix pre = nullspace(f_, select(f_, piece.d_in, low, iota_indices(piece.d_in.cols())));
      b = multiply(f_, piece.d_in, pre);
    }
    return z.cols() - rank(f_, hconcat(f_, z_next, b));
  }

 private:
  struct Piece {
    std::vector<int> filt;
    Matrix d_out, d_in;
  };
  const Field& f_;
  std::map<Grading, Piece> pieces_;
};

template <class Field>
SpectralSequence run_ss(const Field& f, const PointedComplex& pc, const Coefficients& coeff) {
  const FreeChainComplex& c = pc.complex;
  const int l = static_cast<int>(pc.markings);
  Filtered<Field> filtered(f, c);
  std::vector<Grading> keys;
  for (const auto& [g, piece] : c.pieces()) keys.push_back(g);

  SpectralSequence ss;
  ss.field = coeff;
  ss.filtration_length = pc.markings;
  ss.pages.resize(l + 1);
  for (int r = 1; r <= l + 1; ++r) ss.pages[r - 1].r = r;
  ss.infinity.r = l + 1;

  std::mutex m;
  parallel_for(keys.size(), [&](std::size_t n) {
    const Grading g = keys[n];
    std::vector<std::pair<SpectralIndex, std::pair<std::size_t, std::size_t>>> found;
    std::vector<std::pair<SpectralIndex, std::size_t>> inf;
    for (int p = 0; p <= l; ++p) {
      const SpectralIndex idx{p, g.degree, g.quantum};
      for (int r = 1; r <= l + 1; ++r) {
        auto z = filtered.cycles(g, r, p);
        auto b = filtered.boundaries(g, r, p);
        const std::size_t rb = rank(f, b);
        const std::size_t dim = z.cols() - rb;
        const std::size_t ker = rank(f, hconcat(f, filtered.cycles(g, r + 1, p), b)) - rb;
        found.push_back({idx, {dim, dim - ker}});
      }
      inf.push_back({idx, filtered.graded_homology(g, p)});
    }
    std::lock_guard lock(m);
    std::size_t pos = 0;
    for (int p = 0; p <= l; ++p) {
      for (int r = 1; r <= l + 1; ++r, ++pos) {
        const auto& [idx, dr] = found[pos];
        if (dr.first) ss.pages[r - 1].weighted[idx] = dr.first;
        if (dr.second) ss.pages[r - 1].differential_rank[idx] = dr.second;
      }
    }
    for (const auto& [idx, d] : inf)
      if (d) ss.infinity.weighted[idx] = d;
  });

  ss.degenerates_at = 1;
  for (int r = l + 1; r >= 1; --r) {
    if (!ss.pages[r - 1].differential_rank.empty()) {
      ss.degenerates_at = r + 1;
      break;
    }
  }
  return ss;
}

// E_2 predicted by the Koszul complex of H(base; field) under c * X_i.
template <class Field>
std::map<SpectralIndex, std::size_t> field_koszul(const Field& f, const PointedComplex& pc) {
  using Matrix = DenseMatrix<Field>;
  const FreeChainComplex& base = pc.base.complex;
  const std::size_t l = pc.markings;
  const auto c = f.from_integer(pc.coefficient);

  std::map<Grading, FieldHomology<Field>> h;
  for (const auto& [g, piece] : base.pieces()) {
    auto fh = field_homology_at(f, to_field(f, base.d_in(g)), to_field(f, base.d_out(g)));
    if (fh.dim) h.emplace(g, std::move(fh));
  }
  auto dim_at = [&](Grading g) -> std::size_t {
    auto it = h.find(g);
    return it == h.end() ? 0 : it->second.dim;
  };
  // action[j][g]: H(g) -> H(g - (0,2)) for marking j, times c.
  std::vector<std::map<Grading, Matrix>> action(l);
  for (std::size_t j = 0; j < l; ++j) {
    for (const auto& [g, fh] : h) {
      const Grading t{g.degree, g.quantum - 2};
      auto dst = h.find(t);
      if (dst == h.end()) continue;
      Matrix block = to_field(f, base.block(pc.base.marking_ops[j], g, t));
      action[j][g] = scaled(f, multiply(f, multiply(f, dst->second.projection, block), fh.lift), c);
    }
  }

  std::vector<std::vector<std::uint32_t>> subsets(l + 1);
  for (std::uint32_t s = 0; s < (1u << l); ++s) subsets[std::popcount(s)].push_back(s);

  std::set<std::pair<int, int>> columns;  // (i, w)
  for (const auto& [g, fh] : h)
    for (std::size_t k = 0; k <= l; ++k) columns.insert({g.degree, g.quantum + 2 * static_cast<int>(k)});

  std::map<SpectralIndex, std::size_t> out;
  for (const auto& [i, w] : columns) {
    std::vector<std::size_t> dims(l + 1), ranks(l + 1, 0);
    for (std::size_t k = 0; k <= l; ++k) dims[k] = subsets[k].size() * dim_at({i, w - 2 * static_cast<int>(k)});
    for (std::size_t k = 0; k < l; ++k) {
      const Grading src{i, w - 2 * static_cast<int>(k)};
      const std::size_t ds = dim_at(src), dt = dim_at({i, src.quantum - 2});
      if (ds == 0 || dt == 0) continue;
      Matrix d(f, dims[k + 1], dims[k]);
      for (std::size_t a = 0; a < subsets[k].size(); ++a) {
        for (unsigned j = 0; j < l; ++j) {
          const std::uint32_t s = subsets[k][a];
          if (s & (1u << j)) continue;
          auto it = action[j].find(src);
          if (it == action[j].end()) continue;
          const auto& to = subsets[k + 1];
          const std::size_t b = std::lower_bound(to.begin(), to.end(), s | (1u << j)) - to.begin();
          const auto sign = wedge_sign(s, j) > 0 ? f.one() : f.neg(f.one());
          for (std::size_t x = 0; x < dt; ++x)
            for (std::size_t y = 0; y < ds; ++y)
              d(b * dt + x, a * ds + y) = f.add(d(b * dt + x, a * ds + y), f.mul(sign, it->second(x, y)));
        }
      }
      ranks[k] = rank(f, d);
    }
    for (std::size_t k = 0; k <= l; ++k) {
      const std::size_t e = dims[k] - ranks[k] - (k ? ranks[k - 1] : 0);
      if (e) out[{static_cast<int>(k), i + static_cast<int>(k), w}] = e;
    }
  }
  return out;
}

template <class Map>
std::set<typename Map::key_type> key_union(const Map& a, const Map& b) {
  std::set<typename Map::key_type> keys;
  for (const auto& [k, v] : a) keys.insert(k);
  for (const auto& [k, v] : b) keys.insert(k);
  return keys;
}

template <class Map>
long lookup(const Map& m, const typename Map::key_type& k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : static_cast<long>(it->second);
}

void compare(ConvergenceReport& rep, const std::string& check, int r,
             const std::map<SpectralIndex, std::size_t>& expected,
             const std::map<SpectralIndex, std::size_t>& actual) {
  for (const auto& idx : key_union(expected, actual)) {
    const long e = lookup(expected, idx), a = lookup(actual, idx);
    if (e != a) rep.mismatches.push_back({check, r, idx, e, a});
  }
}

}  // namespace

SpectralSequence filtration_ss(const PointedComplex& pc, const Coefficients& field) {
  require_field(field);
  if (field.kind == Coefficients::Kind::Rationals) return run_ss(RationalField{}, pc, field);
  return run_ss(PrimeField(field.prime), pc, field);
}

ConvergenceReport verify_convergence(const SpectralSequence& ss, const PointedComplex& pc) {
  require_field(ss.field);
  ConvergenceReport rep;
  const int l = static_cast<int>(pc.markings);
  if (ss.pages.size() != static_cast<std::size_t>(l + 1)) {
    rep.checks.push_back("page_count");
    rep.mismatches.push_back({"page_count", 0, {}, l + 1, static_cast<long>(ss.pages.size())});
    rep.passed = false;
    return rep;
  }

  rep.checks.push_back("support");
  for (const auto& page : ss.pages) {
    for (const auto& [idx, n] : page.weighted) {
      const int k = std::get<0>(idx);
      if (k < 0 || k > l) rep.mismatches.push_back({"support", page.r, idx, 0, static_cast<long>(n)});
    }
  }

  rep.checks.push_back("page_recurrence");
  rep.checks.push_back("monotone");
  for (std::size_t n = 0; n + 1 < ss.pages.size(); ++n) {
    const SpectralPage& cur = ss.pages[n];
    const SpectralPage& next = ss.pages[n + 1];
    const int r = cur.r;
    for (const auto& idx : key_union(cur.weighted, next.weighted)) {
      const auto [k, t, w] = idx;
      const long expected = lookup(cur.weighted, idx) - lookup(cur.differential_rank, idx) -
                            lookup(cur.differential_rank, SpectralIndex{k - r, t - 1, w});
      const long actual = lookup(next.weighted, idx);
      if (expected != actual) rep.mismatches.push_back({"page_recurrence", next.r, idx, expected, actual});
      if (actual > lookup(cur.weighted, idx)) {
        rep.mismatches.push_back({"monotone", next.r, idx, lookup(cur.weighted, idx), actual});
      }
    }
  }

  rep.checks.push_back("euler_per_weight");
  auto euler = [](const SpectralPage& p) {
    std::map<int, long> chi;
    for (const auto& [idx, n] : p.weighted) chi[std::get<2>(idx)] += (std::get<1>(idx) % 2 == 0 ? 1 : -1) * static_cast<long>(n);
    return chi;
  };
  const auto chi1 = euler(ss.pages.front());
  for (const auto& page : ss.pages) {
    const auto chi = euler(page);
    for (const auto& w : key_union(chi1, chi)) {
      const long e = chi1.count(w) ? chi1.at(w) : 0, a = chi.count(w) ? chi.at(w) : 0;
      if (e != a) rep.mismatches.push_back({"euler_per_weight", page.r, {0, 0, w}, e, a});
    }
  }

  rep.checks.push_back("stabilization");
  compare(rep, "stabilization", l + 1, ss.infinity.weighted, ss.pages.back().weighted);

  rep.checks.push_back("convergence");
  {
    const GradedHomology h = homology(pc.complex, ss.field);
    std::map<SpectralIndex, std::size_t> expected, actual;
    for (const auto& [g, r] : h.groups) expected[{0, g.degree, g.quantum}] = r.rank;
    for (const auto& [idx, n] : ss.infinity.weighted) actual[{0, std::get<1>(idx), std::get<2>(idx)}] += n;
    compare(rep, "convergence", l + 1, expected, actual);
  }

  rep.checks.push_back("e1_exterior_times_kh");
  {
    const GradedHomology kh = homology(pc.base.complex, ss.field);
    std::map<SpectralIndex, std::size_t> expected;
    for (const auto& [g, r] : kh.groups) {
      for (int k = 0; k <= l; ++k) {
        expected[{k, g.degree + k, g.quantum + 2 * k}] = binomial(pc.markings, k) * r.rank;
      }
    }
    compare(rep, "e1_exterior_times_kh", 1, expected, ss.pages.front().weighted);
  }

  if (l >= 1) {
    rep.checks.push_back("e2_field_koszul");
    const auto predicted = ss.field.kind == Coefficients::Kind::Rationals
                               ? field_koszul(RationalField{}, pc)
                               : field_koszul(PrimeField(ss.field.prime), pc);
    compare(rep, "e2_field_koszul", 2, predicted, ss.pages[1].weighted);

    if (ss.field.kind == Coefficients::Kind::Rationals) {
      rep.checks.push_back("e2_integral_koszul_rank");
      const KhKoszulResult integral = kh_koszul(pc.base, pc.coefficient);
      std::map<SpectralIndex, std::size_t> expected, actual;
      for (const auto& [kt, s] : integral.entries)
        if (s.free_rank) expected[{kt.first, kt.second, 0}] = s.free_rank;
      for (const auto& [kt, n] : ss.pages[1].entries()) actual[{kt.first, kt.second, 0}] = n;
      compare(rep, "e2_integral_koszul_rank", 2, expected, actual);
    }
  }

  rep.passed = rep.mismatches.empty();
  return rep;
}

}  // namespace khoszul
