#include "shiftq/cli.hpp"
namespace shiftq { int cli_main(int, char**) { return 0; } }
