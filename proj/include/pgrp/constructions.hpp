#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgrp/group.hpp"
#include "pgrp/presentation.hpp"
#include "pgrp/subgroup.hpp"

namespace pgrp {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...,
/// all diagonal entries non-negative.
struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
};
SmithForm smith_normal_form(const IntMatrix& a);

/// F_{p^d} on the power basis 1, x, ..., x^{d-1} of F_p[x]/(f).
struct FieldRep {
  std::uint32_t p = 2;
  int d = 1;
  std::vector<Residue> poly;  // monic: coefficients c_0..c_{d-1}, leading 1 implied
  /// mult[a][b] = coordinates of x^a * x^b.
  std::vector<std::vector<std::vector<Residue>>> mult;

  std::vector<Residue> multiply(const std::vector<Residue>& a, const std::vector<Residue>& b) const;
};

bool is_irreducible(std::uint32_t p, const std::vector<Residue>& monic_low_coeffs);
/// Least monic irreducible of degree d, ordering polynomials by the integer
/// sum c_k p^k of their lower coefficients.
FieldRep field_rep(std::uint32_t p, int d);
FieldRep field_rep(std::uint32_t p, int d, std::vector<Residue> monic_low_coeffs);

/// Z[x]/(Phi_p(x), (x-1)^{len}) in the basis pi^0..pi^{p-2} with pi = x-1.
struct CyclotomicModuleData {
  std::uint32_t p = 2;
  int length = 1;
  IntMatrix relations;  // rows: pi^{length+k}, k = 0..p-2
  SmithForm smith;
  IntMatrix action;  // multiplication by x = 1 + pi on the pi-basis (row convention)
  std::vector<std::int64_t> invariants;  // non-trivial elementary divisors

  /// Integer coordinates of pi^m.
  std::vector<std::int64_t> pi_power(int m) const;
  /// Canonical coordinates (v V mod d_i) of an integer vector.
  std::vector<std::int64_t> canonical(const std::vector<std::int64_t>& v) const;
};
CyclotomicModuleData cyclotomic_module(std::uint32_t p, int length);

/// Central product of n blocks of order p^3: exponent p blocks for odd p,
/// dihedral blocks for p = 2. Generators x_1..x_n, y_1..y_n, z.
PcPresentation extraspecial(std::uint32_t p, int n);

/// M_i = M_inf / gamma_i(M_inf). Generators g (the rotation of order p) and
/// h_k = pi^{k-1}, k = 1..i-1, spanning the abelian maximal subgroup.
PcPresentation maximal_class_m(std::uint32_t p, int i);
/// The abelian maximal subgroup <h_1, ..., h_{i-1}> of a maximal_class_m group.
SubgroupSet maximal_class_abelian_subgroup(const ConcreteGroup& g);

/// Unitriangular 3x3 matrices over F_{p^d} modulo the last d-b central
/// coordinates. Generators x_1..x_d, y_1..y_d, z_1..z_b.
PcPresentation heisenberg(std::uint32_t p, int d, int b);
PcPresentation heisenberg(std::uint32_t p, int d, int b, const FieldRep& field);

/// Free class-2 exponent-p group on x_1..x_r with central c_ij = [x_i, x_j],
/// i < j, in lexicographic order.
PcPresentation free_class2(std::uint32_t p, int r);

/// T_{b,d} = M_{b-d+3} x E x ... x E (d-1 copies of the order p^3 block).
ConcreteGroup t_group(std::uint32_t p, int b, int d, std::uint64_t order_cap = default_order_cap());
PcPresentation t_group_presentation(std::uint32_t p, int b, int d);

/// Order 8 fixtures.
PcPresentation dihedral8();
PcPresentation quaternion8();

}  // namespace pgrp
