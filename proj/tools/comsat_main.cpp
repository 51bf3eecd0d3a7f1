#include "comsat/cli.hpp"

int main(int argc, char** argv) { return comsat::run_cli(argc, argv); }
