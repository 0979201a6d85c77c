#include <iostream>

#include "args.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace irlssvm_cli;
  Command cmd;
  try {
    cmd = parse_args(argc, argv);
  } catch (const HelpRequested& help) {
    std::cout << help.what();
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }
  return execute(cmd);
}
