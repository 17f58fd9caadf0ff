#pragma once
namespace shiftq { int cli_main(int argc, char** argv); }
