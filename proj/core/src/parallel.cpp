#include "tamedns/parallel.hpp"

#include <algorithm>

namespace tns {

namespace {
std::atomic<int> g_budget{1};
}

void set_thread_budget(int n) { g_budget.store(std::max(1, n)); }
int thread_budget() { return g_budget.load(); }

}  // namespace tns
