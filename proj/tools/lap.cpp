#include <string>
#include <vector>

#include "lap/cli.hpp"

int main(int argc, char** argv) {
  return lap::run(std::vector<std::string>(argv + 1, argv + argc));
}
