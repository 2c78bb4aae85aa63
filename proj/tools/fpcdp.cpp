#include "fpcdp/cli.hpp"

int main(int argc, char** argv) { return fpcdp::run_cli(argc, argv); }
