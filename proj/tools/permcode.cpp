#include <cstdlib>
#include <fstream>
#include <iostream>

#include "permcode/cli.hpp"

int main(int argc, char** argv) {
  using namespace permcode::cli;
  const auto parsed = parse_args(argc, argv, std::getenv("PERMCODE_CAP"));
  if (!parsed.config) {
    std::cout << parsed.failure.output;
    if (!parsed.failure.error.empty()) std::cerr << parsed.failure.error << '\n';
    return parsed.failure.exit_status;
  }

  const RunResult result = run(*parsed.config);
  if (!result.error.empty()) std::cerr << result.error << '\n';
  if (parsed.config->output_path.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream file(parsed.config->output_path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open " << parsed.config->output_path << " for writing\n";
      return kExitError;
    }
    file << result.output;
  }
  return result.exit_status;
}
