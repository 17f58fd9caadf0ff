#include "shiftq/shift.hpp"
