#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cptforge/error.hpp"
#include "cptforge/netlearn.hpp"
#include "cptforge/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;

struct LearnArgs {
  std::string mode = "mle";
  std::filesystem::path graph;
  std::filesystem::path data;
  std::filesystem::path out;
  std::string prior = "ones";
};

int run_learn(const LearnArgs& args) {
  using namespace cptforge;
  const GraphSpec graph = GraphSpec::load(args.graph);
  const CountTable table = ingest_counts(args.data, graph);
  LearnMode mode = LearnMode::kMle;
  std::vector<LearnedCPT> cpts;
  if (args.mode == "mle") {
    cpts = learn_mle(table, graph);
  } else {
    mode = LearnMode::kBayes;
    const PriorPolicy prior = args.prior == "ones" ? PriorPolicy::ones() : PriorPolicy::load(args.prior);
    cpts = learn_bayes(table, graph, prior);
  }
  for (const auto& path : write_cpts(args.out, cpts, mode)) std::cout << path.string() << "\n";
  return kExitOk;
}

int run_verify_command(const cptforge::VerifyOptions& options) {
  const auto results = cptforge::run_verify(options);
  std::cout << cptforge::render_report(results);
  return cptforge::all_passed(results) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn conditional probability tables from count data and check the learning laws."};
  app.name("cpt-forge");
  app.require_subcommand(1);

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn", "Learn one CPT per node and write them as CSV files");
  learn_cmd->add_option("--mode", learn.mode, "mle or bayes")->required()->check(CLI::IsMember({"mle", "bayes"}));
  learn_cmd->add_option("--graph", learn.graph, "Graph file (node/edge directives)")->required();
  learn_cmd->add_option("--data", learn.data, "Count data in long CSV format")->required();
  learn_cmd->add_option("--out", learn.out, "Output directory")->required();
  learn_cmd->add_option("--prior", learn.prior, "'ones' or a prior file (bayes mode)");

  cptforge::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the law suites and print a pass/fail report");
  verify_cmd->add_option("--suite", verify.suite, "golden, exact, stochastic or all")
      ->check(CLI::IsMember({"golden", "exact", "stochastic", "all"}));
  verify_cmd->add_option("--seed", verify.seed, "Seed for the randomized suites");
  verify_cmd->add_option("--resolution", verify.resolution, "Simplex quadrature resolution")
      ->check(CLI::Range(2u, 100000u));
  verify_cmd->add_option("--samples", verify.samples, "Monte Carlo draws per stochastic law")
      ->check(CLI::Range(std::size_t{1000}, std::size_t{100000000}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*learn_cmd) return run_learn(learn);
    return run_verify_command(verify);
  } catch (const cptforge::Error& e) {
    std::cerr << "cpt-forge: " << cptforge::to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "cpt-forge: " << e.what() << "\n";
    return kExitInput;
  }
}
