#include "khoszul/khovanov.hpp"

#include <bit>

#include "khoszul/errors.hpp"

namespace khoszul {

namespace {

// Label of circle c in a code over k circles (circle 0 is the top bit).
inline unsigned label_of(std::uint32_t code, int c, int k) { return (code >> (k - 1 - c)) & 1u; }
inline std::uint32_t with_label(std::uint32_t code, int c, int k, unsigned bit) {
  const std::uint32_t mask = 1u << (k - 1 - c);
  return bit ? (code | mask) : (code & ~mask);
}

}  // namespace

KhovanovCube::KhovanovCube(LinkDiagram d) : diagram_(std::move(d)) {
  const int n = static_cast<int>(diagram_.crossing_count());
  if (n > 24) throw InputError("diagram has " + std::to_string(n) + " crossings; the cube is too large");
  const std::uint32_t count = 1u << n;
  const int n_plus = diagram_.positive_crossings();
  const int n_minus = diagram_.negative_crossings();

  vertices_.reserve(count);
  offsets_.reserve(count);
  for (std::uint32_t v = 0; v < count; ++v) {
    vertices_.push_back(resolve(diagram_, v));
    offsets_.push_back(generators_.size());
    const int k = static_cast<int>(vertices_.back().circles.size());
    if (k > 30) throw InputError("resolution with more than 30 circles");
    const int height = std::popcount(v);
    for (std::uint32_t code = 0; code < (1u << k); ++code) {
      const int minus = std::popcount(code);
      const int plus = k - minus;
      generators_.push_back({v, code, height - n_minus, plus - minus + height + n_plus - 2 * n_minus});
    }
  }

  IntMatrix d_kh(generators_.size(), generators_.size());
  for (std::uint32_t v = 0; v < count; ++v) {
    const ResolvedState& src = vertices_[v];
    const int k = static_cast<int>(src.circles.size());
    for (int c = 0; c < n; ++c) {
      if (v & (1u << c)) continue;
      const std::uint32_t w = v | (1u << c);
      const ResolvedState& dst = vertices_[w];
      const int kw = static_cast<int>(dst.circles.size());
      const Integer sign = (std::popcount(v & ((1u << c) - 1)) % 2 == 0) ? 1 : -1;
      const auto& arcs = diagram_.crossings()[c].arcs;

      // Where each untouched circle goes.
      std::vector<int> image(k);
      for (int x = 0; x < k; ++x) image[x] = dst.circle_of_arc[src.circles[x].front()];

      const int a = src.circle_of_arc[arcs[0]];
      const int b = src.circle_of_arc[arcs[2]];
      for (std::uint32_t code = 0; code < (1u << k); ++code) {
        std::uint32_t base = 0;
        for (int x = 0; x < k; ++x) {
          if (x == a || x == b) continue;
          base = with_label(base, image[x], kw, label_of(code, x, k));
        }
        const std::size_t col = offsets_[v] + code;
        if (a != b) {
          // merge: v+v+ -> v+, v+v- and v-v+ -> v-, v-v- -> 0
          const unsigned la = label_of(code, a, k), lb = label_of(code, b, k);
          if (la && lb) continue;
          const int m = dst.circle_of_arc[arcs[0]];
          d_kh.add(offsets_[w] + with_label(base, m, kw, la | lb), col, sign);
        } else {
          // split: v+ -> v+v- + v-v+, v- -> v-v-
          const int c1 = dst.circle_of_arc[arcs[0]];
          const int c2 = dst.circle_of_arc[arcs[1]];
          if (c1 == c2) {
            throw InternalError("crossing " + std::to_string(c + 1) +
                                " neither merges nor splits (PD code is not planar)");
          }
          if (label_of(code, a, k)) {
            d_kh.add(offsets_[w] + with_label(with_label(base, c1, kw, 1), c2, kw, 1), col, sign);
          } else {
            d_kh.add(offsets_[w] + with_label(with_label(base, c1, kw, 0), c2, kw, 1), col, sign);
            d_kh.add(offsets_[w] + with_label(with_label(base, c1, kw, 1), c2, kw, 0), col, sign);
          }
        }
      }
    }
  }

  std::vector<Grading> grading;
  grading.reserve(generators_.size());
  for (const auto& g : generators_) grading.push_back({g.degree, g.quantum});
  complex_ = FreeChainComplex(std::move(grading), std::move(d_kh));
}

IntMatrix KhovanovCube::point_operator(int arc) const {
  diagram_.component_of_arc(arc);  // range check
  IntMatrix x(generators_.size(), generators_.size());
  for (std::uint32_t v = 0; v < vertices_.size(); ++v) {
    const ResolvedState& state = vertices_[v];
    const int k = static_cast<int>(state.circles.size());
    const int circle = state.circle_of_arc[arc];
    for (std::uint32_t code = 0; code < (1u << k); ++code) {
      if (label_of(code, circle, k)) continue;
      x.set(offsets_[v] + with_label(code, circle, k, 1), offsets_[v] + code, 1);
    }
  }
  return x;
}

KhovanovCube build_cube(const LinkDiagram& d) { return KhovanovCube(d); }

BasepointOperator basepoint_operator(const KhovanovCube& cube, std::size_t marking_index) {
  const auto& marks = cube.diagram().markings();
  if (marking_index >= marks.size()) {
    throw InputError("marking index " + std::to_string(marking_index) + " out of range (" +
                     std::to_string(marks.size()) + " markings)");
  }
  BasepointOperator op{marking_index, cube.point_operator(marks[marking_index].arc)};
  const IntMatrix& d = cube.complex().differential();
  if (!(d * op.chain == op.chain * d)) throw InternalError("X_p does not commute with d");
  if (!(op.chain * op.chain).is_zero()) throw InternalError("X_p does not square to zero");
  return op;
}

IntMatrix ReducedComplex::restrict(const IntMatrix& op) const {
  std::vector<long> reduced_index(op.rows(), -1);
  for (std::size_t i = 0; i < cube_generators.size(); ++i) reduced_index[cube_generators[i]] = static_cast<long>(i);
  IntMatrix out(cube_generators.size(), cube_generators.size());
  for (std::size_t j = 0; j < cube_generators.size(); ++j) {
    for (const auto& e : op.column(cube_generators[j])) {
      if (reduced_index[e.row] < 0) throw InternalError("operator leaves the reduced subcomplex");
      out.set(static_cast<std::size_t>(reduced_index[e.row]), j, e.value);
    }
  }
  return out;
}

ReducedComplex reduced_complex(const KhovanovCube& cube, const Marking& basepoint) {
  const auto& gens = cube.generators();
  ReducedComplex out;
  std::vector<Grading> grading;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const ResolvedState& state = cube.vertex(gens[i].vertex);
    const int k = static_cast<int>(state.circles.size());
    if (label_of(gens[i].labels, state.circle_of_arc.at(basepoint.arc), k)) {
      out.cube_generators.push_back(i);
      grading.push_back({gens[i].degree, gens[i].quantum + 1});
    }
  }
  IntMatrix d = out.restrict(cube.complex().differential());
  out.complex = FreeChainComplex(std::move(grading), std::move(d));
  return out;
}

KhovanovBase khovanov_base(const LinkDiagram& d, bool reduced) {
  KhovanovCube cube(d);
  KhovanovBase base;
  base.reduced = reduced;
  std::vector<IntMatrix> ops;
  for (std::size_t i = 0; i < d.markings().size(); ++i) ops.push_back(basepoint_operator(cube, i).chain);
  if (!reduced) {
    base.complex = cube.complex();
    base.marking_ops = std::move(ops);
    return base;
  }
  if (!d.basepoint()) throw InputError("reduced complex requested but no basepoint is set");
  ReducedComplex r = reduced_complex(cube, *d.basepoint());
  for (const auto& op : ops) base.marking_ops.push_back(r.restrict(op));
  base.complex = std::move(r.complex);
  return base;
}

GradedHomology kh(const LinkDiagram& d, const Coefficients& c, bool with_lifts) {
  return homology(KhovanovCube(d).complex(), c, with_lifts);
}

GradedHomology kh_reduced(const LinkDiagram& d, const Coefficients& c, bool with_lifts) {
  if (!d.basepoint()) throw InputError("reduced homology needs a basepoint");
  KhovanovCube cube(d);
  return homology(reduced_complex(cube, *d.basepoint()).complex, c, with_lifts);
}

std::map<Grading, GroupMorphism> induced_action(const FreeChainComplex& c, const GradedHomology& h,
                                                const IntMatrix& op) {
  if (h.coefficients.kind != Coefficients::Kind::Integers) {
    throw std::invalid_argument("induced_action needs integral homology");
  }
  std::map<Grading, GroupMorphism> out;
  for (const auto& [g, src] : h.integral) {
    const Grading t{g.degree, g.quantum - 2};
    auto it = h.integral.find(t);
    HomologyResult empty;
    empty.group = PresentedGroup::free(0);
    const HomologyResult& dst = it == h.integral.end() ? empty : it->second;

    IntMatrix image = c.block(op, g, t) * src.lift;
    IntMatrix matrix(dst.orders.size(), src.orders.size());
    if (image.rows() > 0 && dst.orders.empty()) {
      // Target homology vanishes; the image must still consist of cycles.
      if (!(c.d_out(t) * image).is_zero()) {
        throw InternalError("induced action: image of a homology lift is not a cycle");
      }
    } else if (image.rows() > 0) {
      if (!(c.d_out(t) * image).is_zero()) {
        throw InternalError("induced action: image of a homology lift is not a cycle");
      }
      matrix = dst.classes_of(image);
    }
    GroupMorphism f{src.group, dst.group, std::move(matrix)};
    f.validate();
    out.emplace(g, std::move(f));
  }
  return out;
}

}  // namespace khoszul
