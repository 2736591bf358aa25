#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "geod/precision.hpp"

int main(int argc, char** argv) {
  geod::set_working_precision(50);
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
