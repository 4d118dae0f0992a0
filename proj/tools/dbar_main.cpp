// Command-line entry point (subcommands implemented as the pipeline layer
// lands; placeholder that prints the version for the scaffolding build).

#include <cstdio>

int main() {
  std::puts("dbar (pipeline not wired yet)");
  return 0;
}
