// Command-line front end: generators, colorings, verification, exact solving and checks.

#include "bbc/bbc.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

enum Exit { kOk = 0, kVerification = 1, kUsage = 2, kTooLarge = 3 };

int exit_code_for(bbc::ErrorCode code) {
  switch (code) {
    case bbc::ErrorCode::InstanceTooLarge:
    case bbc::ErrorCode::SearchSpaceTooLarge:
      return kTooLarge;
    case bbc::ErrorCode::VerificationFailed:
      return kVerification;
    default:
      return kUsage;
  }
}

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw bbc::Error(bbc::ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bbc::Forest read_graph(const std::string& path) { return bbc::parse_graph(read_all(path)); }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw bbc::Error(bbc::ErrorCode::InvalidArgument, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

/// Accepts the JSON coloring object or text lines "v c".
bbc::BackboneColoring read_coloring(const std::string& path, std::int64_t lambda, std::size_t n) {
  std::string text = read_all(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    bbc::Json j;
    try {
      j = bbc::Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw bbc::Error(bbc::ErrorCode::ParseError, e.what());
    }
    return bbc::coloring_from_json(j);
  }
  bbc::BackboneColoring c;
  c.lambda = lambda;
  c.colors.assign(n, 0);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    std::istringstream ls(line);
    long long v = -1;
    long long col = 0;
    if (!(ls >> v >> col) || v < 0 || static_cast<std::size_t>(v) >= n) {
      throw bbc::Error(bbc::ErrorCode::ParseError, "bad coloring line '" + line + "'");
    }
    c.colors[static_cast<std::size_t>(v)] = col;
  }
  c.max_color = n == 0 ? 0 : *std::max_element(c.colors.begin(), c.colors.end());
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backbone colorings of complete graphs with forest backbones"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string input = "-";
  std::string output = "-";
  std::string format = "json";
  app.add_option("-o,--output", output, "Output file (default stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a backbone in the graph text format");
  gen->require_subcommand(1);
  auto* gen_fib = gen->add_subcommand("fib", "Fibonacci tree");
  unsigned order = 0;
  gen_fib->add_option("--order", order, "Order N")->required();
  auto* gen_random = gen->add_subcommand("random", "Random labeled tree");
  std::size_t n = 0;
  std::optional<std::size_t> max_degree;
  std::uint64_t seed = bbc::kDefaultSeed;
  gen_random->add_option("--n", n, "Vertex count")->required();
  gen_random->add_option("--max-degree", max_degree, "Degree bound");
  gen_random->add_option("--seed", seed, "PRNG seed");

  // color
  auto* color = app.add_subcommand("color", "Compute a backbone coloring");
  std::int64_t lambda = 0;
  std::string algo = "best";
  color->add_option("--lambda", lambda, "Gap lambda >= 2")->required();
  color->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember({"direct", "rby", "best"}));
  color->add_option("-i,--input", input, "Graph file (default stdin)");

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a coloring");
  std::string coloring_path;
  verify->add_option("--lambda", lambda, "Gap lambda")->required();
  verify->add_option("--coloring", coloring_path, "Coloring file (JSON or 'v c' lines)")->required();
  verify->add_option("-i,--input", input, "Graph file (default stdin)");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "Red-blue-yellow decomposition");
  std::int64_t k = 0;
  decompose->add_option("--k", k, "Target |R| - |B|")->required();
  decompose->add_option("-i,--input", input, "Graph file (default stdin)");

  // exact
  auto* exact = app.add_subcommand("exact", "Exact backbone coloring number (n <= 15)");
  exact->add_option("--lambda", lambda, "Gap lambda")->required();
  exact->add_option("-i,--input", input, "Graph file (default stdin)");

  // check
  auto* check = app.add_subcommand("check", "Lower-bound machinery");
  check->require_subcommand(1);
  auto* check_lb = check->add_subcommand("lower-bound", "Certificate for Fibonacci trees");
  std::optional<std::string> lambda_big;
  check_lb->add_option("--order", order, "Order N")->required();
  check_lb->add_option("--lambda", lambda_big, "Lambda (default floor(n/2))");
  auto* check_imp = check->add_subcommand("impossibility", "Decomposition premise vs exact coloring");
  std::int64_t budget = 1;
  bool with_exact = false;
  check_imp->add_option("--lambda", lambda, "Gap lambda")->required();
  check_imp->add_option("--l", budget, "Yellow budget l")->required();
  check_imp->add_flag("--exact", with_exact, "Also compute the exact value");
  check_imp->add_option("-i,--input", input, "Graph file (default stdin)");

  // bench
  auto* bench = app.add_subcommand("bench", "Timing harness");
  std::string config_path;
  bench->add_option("--config", config_path, "JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    Output out(output);
    std::ostream& os = out.stream();
    const bool text = format == "text";

    if (*gen_fib) {
      bbc::write_graph(os, bbc::fib_tree(order).tree);
    } else if (*gen_random) {
      bbc::write_graph(os, bbc::gen_random_tree(n, max_degree, seed));
    } else if (*color) {
      bbc::Forest f = read_graph(input);
      auto c = bbc::run_algorithm(bbc::parse_algorithm(algo), f, lambda);
      if (!bbc::verify_backbone_coloring(f, lambda, c).ok()) {
        throw bbc::Error(bbc::ErrorCode::VerificationFailed, "internal coloring failed verification");
      }
      if (text) {
        for (std::size_t v = 0; v < c.colors.size(); ++v) os << v << ' ' << c.colors[v] << '\n';
      } else {
        os << bbc::to_json(c).dump() << '\n';
      }
    } else if (*verify) {
      bbc::Forest f = read_graph(input);
      auto c = read_coloring(coloring_path, lambda, f.size());
      auto report = bbc::verify_backbone_coloring(f, lambda, c);
      if (text) {
        os << (report.ok() ? "ok" : "invalid") << '\n';
        for (const auto& v : report.violations) os << bbc::to_string(v.kind) << ": " << v.detail << '\n';
      } else {
        os << bbc::to_json(report).dump() << '\n';
      }
      return report.ok() ? kOk : kVerification;
    } else if (*decompose) {
      bbc::Forest f = read_graph(input);
      auto d = bbc::rby_decompose_forest(f, k);
      if (!bbc::validate_rby(f, d, k, d.l).ok()) {
        throw bbc::Error(bbc::ErrorCode::VerificationFailed, "decomposition failed validation");
      }
      if (text) {
        os << "k=" << d.k << " l=" << d.l << " |R|=" << d.red.size() << " |B|=" << d.blue.size()
           << " |Y|=" << d.yellow.size() << '\n';
      } else {
        os << bbc::to_json(d).dump() << '\n';
      }
    } else if (*exact) {
      bbc::Forest f = read_graph(input);
      auto r = bbc::exact_bbc(f, lambda);
      if (text) {
        os << r.value << '\n';
      } else {
        os << bbc::to_json(r).dump() << '\n';
      }
    } else if (*check_lb) {
      std::optional<bbc::BigInt> lam;
      if (lambda_big) {
        try {
          lam = bbc::BigInt(*lambda_big);
        } catch (const std::exception&) {
          throw bbc::Error(bbc::ErrorCode::InvalidArgument, "bad lambda '" + *lambda_big + "'");
        }
      }
      auto rep = bbc::lower_bound_certificate(order, lam);
      os << bbc::to_json(rep).dump(text ? 2 : -1) << '\n';
      return rep.all_hold() ? kOk : kVerification;
    } else if (*check_imp) {
      bbc::Tree t = bbc::Tree::from(read_graph(input));
      auto rep = bbc::impossibility_check(t, lambda, budget, with_exact);
      os << bbc::to_json(rep).dump(text ? 2 : -1) << '\n';
      return rep.consistent() ? kOk : kVerification;
    } else if (*bench) {
      bbc::Json cfg;
      try {
        cfg = bbc::Json::parse(read_all(config_path));
      } catch (const nlohmann::json::exception& e) {
        throw bbc::Error(bbc::ErrorCode::ParseError, e.what());
      }
      auto rep = bbc::run_bench(bbc::bench_config_from_json(cfg));
      os << bbc::to_json(rep).dump(text ? 2 : -1) << '\n';
    }
  } catch (const bbc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kOk;
}
