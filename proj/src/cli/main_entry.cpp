#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "monotor/cli.hpp"
#include "monotor/errors.hpp"

namespace monotor::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitDomain = 2;
constexpr int kExitSchema = 3;

std::pair<long, long> parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw SchemaError("--window: expected a,b");
  auto number = [&](std::size_t from, std::size_t to) {
    long v = 0;
    const char* first = text.data() + from;
    const char* last = text.data() + to;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) throw SchemaError("--window: expected a,b");
    return v;
  };
  const long a = number(0, comma), b = number(comma + 1, text.size());
  if (a > b) throw SchemaError("--window: empty range");
  return {a, b};
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"monotor: torsion functors with monomial support, Čech and toric reports"};
  std::string command, in_path, out_path, window;
  unsigned box = 0;
  std::uint64_t seed = 0;
  app.add_option("command", command, "one of: floor, restrict, m-mu, gamma-eq, ...")->required();
  app.add_option("--in", in_path, "input JSON document ('-' for stdin)")->required();
  auto* window_opt = app.add_option("--window", window, "degree range a,b for every coordinate");
  auto* box_opt = app.add_option("--box", box, "exponent box for Čech slices");
  app.add_option("--seed", seed, "seed for randomized suites (default 0)");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSchema;
  }

  try {
    RunOptions options;
    options.seed = seed;
    if (*window_opt) options.window = parse_window(window);
    if (*box_opt) options.box = box;
    const std::string report = run(command, slurp(in_path), options);
    if (out_path.empty()) {
      std::cout << report;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw SchemaError("cannot write output file '" + out_path + "'");
      out << report;
    }
    return kExitOk;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace monotor::cli
