#include "json_io.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "monotor/errors.hpp"

namespace monotor::cli {

Node Node::at(const std::string& key) const {
  if (!value.is_object()) fail("expected an object");
  auto it = value.find(key);
  if (it == value.end()) throw SchemaError(path + "." + key + ": required field is missing");
  return Node{*it, path + "." + key};
}

Node Node::at(std::size_t index) const { return Node{value.at(index), path + "[" + std::to_string(index) + "]"}; }

bool Node::has(const std::string& key) const { return value.is_object() && value.contains(key); }

void Node::fail(const std::string& what) const { throw SchemaError(path + ": " + what); }

void Node::expect_object(std::initializer_list<const char*> required, std::initializer_list<const char*> optional) const {
  if (!value.is_object()) fail("expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!value.contains(k)) throw SchemaError(path + "." + k + ": required field is missing");
  }
  for (const char* k : optional) known.insert(k);
  for (auto it = value.begin(); it != value.end(); ++it)
    if (!known.count(it.key())) throw SchemaError(path + "." + it.key() + ": unknown field");
}

Integer read_integer(const Node& n) {
  const json& v = n.value;
  if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return Integer(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    // big integers travel as decimal strings
    const std::string s = v.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      n.fail("expected an integer");
    return Integer(s);
  }
  n.fail("expected an integer");
}

long read_long(const Node& n) {
  const Integer x = read_integer(n);
  if (!x.fits_slong_p()) n.fail("integer out of range");
  return x.get_si();
}

unsigned long read_natural(const Node& n) {
  const Integer x = read_integer(n);
  if (x < 0) n.fail("expected a nonnegative integer");
  if (!x.fits_ulong_p()) n.fail("integer out of range");
  return x.get_ui();
}

bool read_bool(const Node& n) {
  if (!n.value.is_boolean()) n.fail("expected true or false");
  return n.value.get<bool>();
}

namespace {

void expect_array(const Node& n) {
  if (!n.value.is_array()) n.fail("expected an array");
}

}  // namespace

IntVector read_int_vector(const Node& n) {
  expect_array(n);
  IntVector out;
  for (std::size_t i = 0; i < n.value.size(); ++i) out.push_back(read_integer(n.at(i)));
  return out;
}

IntVector read_degree(const Node& n, std::size_t rank) {
  // a bare integer is accepted for rank-1 groups
  if (n.value.is_number_integer() || n.value.is_string()) {
    if (rank != 1) n.fail("expected an array of " + std::to_string(rank) + " integers");
    return {read_integer(n)};
  }
  IntVector v = read_int_vector(n);
  if (v.size() != rank) n.fail("expected " + std::to_string(rank) + " entries, got " + std::to_string(v.size()));
  return v;
}

std::vector<IntVector> read_vectors(const Node& n, std::optional<std::size_t> length) {
  expect_array(n);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < n.value.size(); ++i) {
    if (length)
      out.push_back(read_degree(n.at(i), *length));
    else
      out.push_back(read_int_vector(n.at(i)));
  }
  return out;
}

Exponent read_exponent(const Node& n, std::optional<std::size_t> length) {
  expect_array(n);
  if (length && n.value.size() != *length)
    n.fail("expected " + std::to_string(*length) + " exponents, got " + std::to_string(n.value.size()));
  std::vector<Exponent::value_type> e;
  for (std::size_t i = 0; i < n.value.size(); ++i) {
    const Node c = n.at(i);
    const unsigned long x = read_natural(c);
    if (x > std::numeric_limits<Exponent::value_type>::max()) c.fail("exponent too large");
    e.push_back(static_cast<Exponent::value_type>(x));
  }
  return Exponent(std::move(e));
}

MonomialIdeal read_ideal(const Node& n, std::optional<std::size_t> variables) {
  n.expect_object({"gens"}, {});
  const Node gens = n.at("gens");
  expect_array(gens);
  std::vector<Exponent> raw;
  for (std::size_t i = 0; i < gens.value.size(); ++i) {
    raw.push_back(read_exponent(gens.at(i), variables));
    if (!variables) variables = raw.back().size();
  }
  if (!variables) n.fail("cannot infer the number of variables of the zero ideal; supply a ring");
  return MonomialIdeal::minimalize(std::move(raw), *variables);
}

GradedRing read_ring(const Node& n) {
  n.expect_object({"grading"}, {"variables"});
  const Node g = n.at("grading");
  g.expect_object({"ambient_rank", "degrees"}, {"relations"});
  const unsigned long rank = read_natural(g.at("ambient_rank"));
  std::vector<IntVector> relations;
  if (g.has("relations")) relations = read_vectors(g.at("relations"), rank);
  const std::vector<IntVector> degrees = read_vectors(g.at("degrees"), rank);
  if (n.has("variables")) {
    const Node vars = n.at("variables");
    expect_array(vars);
    for (std::size_t i = 0; i < vars.value.size(); ++i)
      if (!vars.value[i].is_string()) vars.at(i).fail("expected a variable name");
    if (vars.value.size() != degrees.size())
      vars.fail(std::to_string(vars.value.size()) + " names for " + std::to_string(degrees.size()) + " degrees");
  }
  FgAbelianGroup group(IntMatrix::from_columns(relations, rank));
  return GradedRing(std::move(group), IntMatrix::from_columns(degrees, rank));
}

Subgroup read_subgroup(const Node& n, const FgAbelianGroup& parent) {
  n.expect_object({"generators"}, {});
  const std::vector<IntVector> gens = read_vectors(n.at("generators"), parent.ambient_rank());
  return Subgroup(parent, IntMatrix::from_columns(gens, parent.ambient_rank()));
}

BaseRingDescriptor read_base_ring(const Node& n) {
  n.expect_object({"variant"}, {"params"});
  if (!n.at("variant").value.is_string()) n.at("variant").fail("expected a string");
  const std::string variant = n.at("variant").value.get<std::string>();
  static const json empty = json::object();
  const Node params = n.has("params") ? n.at("params") : Node{empty, n.path + ".params"};
  BaseRingDescriptor out;
  if (variant == "ZeroRing") {
    params.expect_object({}, {});
    out = base_ring::ZeroRing{};
  } else if (variant == "Field") {
    params.expect_object({}, {"characteristic"});
    base_ring::Field f;
    if (params.has("characteristic")) f.characteristic = read_natural(params.at("characteristic"));
    out = f;
  } else if (variant == "Integers") {
    params.expect_object({}, {});
    out = base_ring::Integers{};
  } else if (variant == "IntegersMod") {
    params.expect_object({"modulus"}, {});
    out = base_ring::IntegersMod{read_integer(params.at("modulus"))};
  } else if (variant == "TruncatedPolynomial") {
    params.expect_object({"exponents"}, {});
    const Node e = params.at("exponents");
    expect_array(e);
    base_ring::TruncatedPolynomial t;
    for (std::size_t i = 0; i < e.value.size(); ++i) {
      const unsigned long x = read_natural(e.at(i));
      if (x > std::numeric_limits<unsigned>::max()) e.at(i).fail("exponent too large");
      t.exponents.push_back(static_cast<unsigned>(x));
    }
    out = t;
  } else if (variant == "SquareZeroFamily") {
    params.expect_object({}, {"unbounded"});
    base_ring::SquareZeroFamily s;
    if (params.has("unbounded")) s.unbounded = read_bool(params.at("unbounded"));
    out = s;
  } else if (variant == "TruncatedFamilyUnbounded") {
    params.expect_object({}, {});
    out = base_ring::TruncatedFamilyUnbounded{};
  } else {
    n.at("variant").fail("unknown base ring variant '" + variant + "'");
  }
  validate(out);
  return out;
}

IdealFamily read_family(const Node& n) {
  n.expect_object({"c", "d"}, {});
  return IdealFamily{read_long(n.at("c")), read_long(n.at("d"))};
}

Fan read_fan(const Node& n) {
  n.expect_object({"rank", "rays", "cones"}, {});
  const unsigned long rank = read_natural(n.at("rank"));
  std::vector<IntVector> rays = read_vectors(n.at("rays"), rank);
  const Node cn = n.at("cones");
  expect_array(cn);
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < cn.value.size(); ++i) {
    const Node c = cn.at(i);
    expect_array(c);
    Cone cone;
    for (std::size_t j = 0; j < c.value.size(); ++j) cone.push_back(read_natural(c.at(j)));
    cones.push_back(std::move(cone));
  }
  return validate_fan(rank, std::move(rays), std::move(cones));
}

IntMatrix read_matrix_rows(const Node& n) {
  expect_array(n);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < n.value.size(); ++i) {
    rows.push_back(read_int_vector(n.at(i)));
    if (rows.back().size() != rows.front().size()) n.at(i).fail("rows have different lengths");
  }
  return IntMatrix::from_rows(rows, rows.empty() ? 0 : rows.front().size());
}

json encode(const Integer& x) {
  if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

json encode(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(encode(x));
  return out;
}

json encode(const Exponent& e) {
  json out = json::array();
  for (auto x : e) out.push_back(static_cast<std::uint64_t>(x));
  return out;
}

json encode(const LaurentExponent& e) {
  json out = json::array();
  for (long x : e) out.push_back(static_cast<std::int64_t>(x));
  return out;
}

json encode(const MonomialIdeal& a) {
  json out = json::array();
  for (const auto& g : a.gens()) out.push_back(encode(g));
  return out;
}

json encode(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(encode(m.row(r)));
  return out;
}

json encode_optional(const std::optional<unsigned>& v) { return v ? json(*v) : json(nullptr); }

json encode(const DegreeCohomology& d) {
  json groups = json::array();
  for (const auto& g : d.groups) groups.push_back({{"rank", g.rank}, {"torsion", encode(g.torsion)}});
  return {{"degree", encode(d.degree)},
          {"groups", groups},
          {"cochain_dims", d.cochain_dims},
          {"truncated", d.truncated},
          {"exact", d.exact}};
}

}  // namespace monotor::cli
