#include "kpztail/cli.hpp"

int main(int argc, char** argv) { return kpztail::cli::run(argc, argv); }
