#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "khoszul/abelian.hpp"
#include "khoszul/graded_complex.hpp"
#include "khoszul/link_diagram.hpp"

namespace khoszul {

// Basis element of V^{(x) circles} at a cube vertex. `labels` reads the
// circles lexicographically (circle 0 is the most significant bit); a set
// bit means v-, a clear bit v+.
struct CubeGenerator {
  std::uint32_t vertex = 0;
  std::uint32_t labels = 0;
  int degree = 0;
  int quantum = 0;
};

class KhovanovCube {
 public:
  explicit KhovanovCube(LinkDiagram d);

  const LinkDiagram& diagram() const { return diagram_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const ResolvedState& vertex(std::uint32_t v) const { return vertices_[v]; }
  const std::vector<CubeGenerator>& generators() const { return generators_; }
  std::size_t generator_index(std::uint32_t vertex, std::uint32_t labels) const {
    return offsets_[vertex] + labels;
  }
  const FreeChainComplex& complex() const { return complex_; }

  // Chain-level X for a point on `arc`: v+ -> v-, v- -> 0 on the circle
  // through the arc, identity on the other tensor factors.
  IntMatrix point_operator(int arc) const;

 private:
  LinkDiagram diagram_;
  std::vector<ResolvedState> vertices_;
  std::vector<std::size_t> offsets_;
  std::vector<CubeGenerator> generators_;
  FreeChainComplex complex_;
};

KhovanovCube build_cube(const LinkDiagram& d);

struct BasepointOperator {
  std::size_t marking = 0;
  IntMatrix chain;  // on the cube's global basis
};

BasepointOperator basepoint_operator(const KhovanovCube& cube, std::size_t marking_index);

// ker X_{p0}: generators labelling the basepoint circle v-, quantum shifted
// by +1 so the reduced unknot sits in bidegree (0,0).
struct ReducedComplex {
  FreeChainComplex complex;
  std::vector<std::size_t> cube_generators;  // reduced index -> cube index
  // Restricts a cube operator that preserves ker X_{p0}; throws otherwise.
  IntMatrix restrict(const IntMatrix& op) const;
};

ReducedComplex reduced_complex(const KhovanovCube& cube, const Marking& basepoint);

// A Khovanov chain complex (reduced when the diagram has a basepoint and
// `reduced` is set) with the chain-level X operator of every marking.
struct KhovanovBase {
  FreeChainComplex complex;
  std::vector<IntMatrix> marking_ops;
  bool reduced = false;
};

KhovanovBase khovanov_base(const LinkDiagram& d, bool reduced);

GradedHomology kh(const LinkDiagram& d, const Coefficients& c, bool with_lifts = false);
GradedHomology kh_reduced(const LinkDiagram& d, const Coefficients& c, bool with_lifts = false);

// Action of a chain map of quantum degree -2 on integral homology, one
// morphism per source bidegree (i,j) -> (i,j-2). `h` must carry lifts.
std::map<Grading, GroupMorphism> induced_action(const FreeChainComplex& c,
                                                const GradedHomology& h,
                                                const IntMatrix& op);

}  // namespace khoszul
