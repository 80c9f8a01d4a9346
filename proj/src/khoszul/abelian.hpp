#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "khoszul/int_matrix.hpp"
#include "khoszul/smith.hpp"

namespace khoszul {

struct Coefficients {
  enum class Kind { Integers, Rationals, PrimeField, IntegersLocalizedAwayFrom2 };

  Kind kind = Kind::Integers;
  unsigned prime = 0;  // only for PrimeField

  static Coefficients integers() { return {Kind::Integers, 0}; }
  static Coefficients rationals() { return {Kind::Rationals, 0}; }
  static Coefficients prime_field(unsigned p);
  static Coefficients z_half() { return {Kind::IntegersLocalizedAwayFrom2, 0}; }
  // Accepts Z, Q, F<p> (p prime), Zhalf.
  static Coefficients parse(std::string_view text);

  bool is_field() const { return kind == Kind::Rationals || kind == Kind::PrimeField; }
  std::string name() const;
  friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

bool is_prime(unsigned p);

// Canonical form of a finitely generated abelian group: Z^free_rank plus
// Z/t_1 + ... + Z/t_k with 2 <= t_1 | t_2 | ... | t_k.
struct GroupStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  std::size_t minimal_generators() const { return free_rank + torsion.size(); }
  std::string to_string() const;
  friend bool operator==(const GroupStructure& a, const GroupStructure& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

GroupStructure direct_sum(const GroupStructure& a, const GroupStructure& b);

// Z^gens modulo the column span of rels.
class PresentedGroup {
 public:
  PresentedGroup() = default;
  PresentedGroup(std::size_t gens, IntMatrix rels);

  static PresentedGroup free(std::size_t gens) { return {gens, IntMatrix(gens, 0)}; }
  static PresentedGroup from_structure(const GroupStructure& s);

  std::size_t gens() const { return gens_; }
  const IntMatrix& rels() const { return rels_; }
  GroupStructure structure() const;
  // True when the vectors (columns of w) are zero in the group.
  bool is_zero(const IntMatrix& w) const;

 private:
  std::size_t gens_ = 0;
  IntMatrix rels_;
};

PresentedGroup direct_sum(const PresentedGroup& a, const PresentedGroup& b);

struct GroupMorphism {
  PresentedGroup source;
  PresentedGroup target;
  IntMatrix matrix;  // target.gens() x source.gens()

  // Throws InternalError unless the matrix maps relations into relations.
  void validate() const;
  bool is_zero() const { return target.is_zero(matrix); }
};

GroupMorphism compose(const GroupMorphism& g, const GroupMorphism& f);  // g o f

// ker(d_out) / im(d_in) together with chain-level representatives.
struct HomologyResult {
  PresentedGroup group;          // diag(orders) presentation, free generators first
  std::vector<Integer> orders;   // per generator: 0 for free, else torsion order
  IntMatrix lift;                // middle-term chains, one column per generator
  IntMatrix projection;          // maps a cycle to generator coordinates

  GroupStructure structure() const { return group.structure(); }
  // Class of a cycle in generator coordinates, reduced modulo the orders.
  std::vector<Integer> class_of(const std::vector<Integer>& cycle) const;
  IntMatrix classes_of(const IntMatrix& cycles) const;
};

// Requires d_out * d_in == 0; throws InternalError naming the first
// offending entry otherwise.
HomologyResult homology_at(const IntMatrix& d_in, const IntMatrix& d_out);

// Structure of ker(d_out)/im(d_in) without generator lifts.
GroupStructure homology_structure(const IntMatrix& d_in, const IntMatrix& d_out);

// ker(g)/im(f) for morphisms of presented groups.
PresentedGroup presented_homology_at(const GroupMorphism& f, const GroupMorphism& g);

struct CoefficientReport {
  Coefficients coefficients;
  std::size_t rank = 0;          // free rank (Z, Zhalf) or dimension (fields)
  std::vector<Integer> torsion;  // Z: full chain; Zhalf: odd parts; fields: empty
  std::string to_string() const;
};

// G tensor the coefficient ring (no Tor term).
CoefficientReport change_coefficients(const GroupStructure& g, const Coefficients& c);
CoefficientReport change_coefficients(const PresentedGroup& g, const Coefficients& c);

}  // namespace khoszul
