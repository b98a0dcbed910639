#include <iostream>

#include "wpa/cli.hpp"

int main(int argc, char** argv) { return wpa::run_cli(argc, argv, std::cout, std::cerr); }
