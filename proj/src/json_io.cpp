#include "shiftq/json_io.hpp"
