#include "shiftq/errors.hpp"

#include <atomic>

namespace shiftq::limits {

namespace {
std::atomic<unsigned> g_max_total_degree{40};
std::atomic<unsigned long long> g_default_budget{100000};
}  // namespace

unsigned max_total_degree() { return g_max_total_degree.load(); }
void set_max_total_degree(unsigned cap) { g_max_total_degree.store(cap); }

unsigned long long default_budget() { return g_default_budget.load(); }
void set_default_budget(unsigned long long budget) { g_default_budget.store(budget); }

}  // namespace shiftq::limits
