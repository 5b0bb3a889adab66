#include "subsetminer/cli.hpp"

int main(int argc, char** argv) { return subsetminer::run_cli(argc, argv); }
