#include "shiftq/cli.hpp"
int main(int argc, char** argv) { return shiftq::cli_main(argc, argv); }
