#include "fpuwaves/cli.hpp"

int main(int argc, char** argv) { return fpuwaves::run_cli(argc, argv); }
