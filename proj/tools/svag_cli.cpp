#include "svag/harness.hpp"

int main(int argc, char** argv) { return svag::cli_main(argc, argv); }
