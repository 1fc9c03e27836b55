#include <csignal>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "venn/cli.hpp"

namespace {

venn::optimizer::StopSignal g_stop;
volatile std::sig_atomic_t g_interrupts = 0;

// First interrupt: stop gracefully and still write outputs. Second: abort.
extern "C" void on_interrupt(int) {
  if (g_interrupts != 0) std::_Exit(130);
  g_interrupts = 1;
  g_stop.raise();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<venn::cli::CliConfig> config;
  try {
    config = venn::cli::parse_cli(args, std::cout);
  } catch (const venn::Error& e) {
    std::cerr << "usage error: " << e.what() << "\nrun with --help for the flag list\n";
    return venn::cli::kExitUsage;
  }
  if (!config) return venn::cli::kExitOk;

  std::signal(SIGINT, on_interrupt);
  return venn::cli::run_pipeline(*config, std::cout, std::cerr, &g_stop);
}
