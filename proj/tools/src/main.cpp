#include <iostream>

#include "matchstick/cli/app.hpp"

int main(int argc, char** argv) { return matchstick::run_cli(argc, argv, std::cout, std::cerr); }
