#include "shiftq/scan.hpp"
