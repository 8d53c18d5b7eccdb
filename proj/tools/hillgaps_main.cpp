#include "hillgaps/report.hpp"

int main(int argc, char** argv) { return hillgaps::cli_main(argc, argv); }
