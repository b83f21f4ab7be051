#include "polyuni/cli.hpp"

int main(int argc, char** argv) { return polyuni::run_cli(argc, argv); }
