#include "psirep/cli.hpp"

int main(int argc, char** argv) { return psirep::cli::run_main(argc, argv); }
