#pragma once

// JSON <-> library objects for the command-line front-end. Every reader
// takes the JSON path of the value so schema errors can name the field.

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "monotor/cech.hpp"
#include "monotor/lattice.hpp"
#include "monotor/monomial.hpp"
#include "monotor/restriction.hpp"
#include "monotor/toric.hpp"
#include "monotor/torsion.hpp"

namespace monotor::cli {

using nlohmann::json;

/// A JSON value together with its location, for diagnostics.
struct Node {
  const json& value;
  std::string path;

  Node at(const std::string& key) const;
  Node at(std::size_t index) const;
  bool has(const std::string& key) const;
  [[noreturn]] void fail(const std::string& what) const;
  /// Rejects keys outside `allowed` and missing keys from `required`.
  void expect_object(std::initializer_list<const char*> required, std::initializer_list<const char*> optional) const;
};

Integer read_integer(const Node& n);
long read_long(const Node& n);
unsigned long read_natural(const Node& n);
bool read_bool(const Node& n);
IntVector read_int_vector(const Node& n);
IntVector read_degree(const Node& n, std::size_t rank);
std::vector<IntVector> read_vectors(const Node& n, std::optional<std::size_t> length);
Exponent read_exponent(const Node& n, std::optional<std::size_t> length);
MonomialIdeal read_ideal(const Node& n, std::optional<std::size_t> variables);
GradedRing read_ring(const Node& n);
Subgroup read_subgroup(const Node& n, const FgAbelianGroup& parent);
BaseRingDescriptor read_base_ring(const Node& n);
IdealFamily read_family(const Node& n);
Fan read_fan(const Node& n);
IntMatrix read_matrix_rows(const Node& n);

json encode(const Integer& x);
json encode(const IntVector& v);
json encode(const Exponent& e);
json encode(const LaurentExponent& e);
json encode(const MonomialIdeal& a);
json encode(const IntMatrix& m);  // list of rows
json encode_optional(const std::optional<unsigned>& v);
json encode(const DegreeCohomology& d);

}  // namespace monotor::cli
