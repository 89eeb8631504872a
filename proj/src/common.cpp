#include "tilebars/common.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace tilebars {
namespace {

std::mutex g_warning_mutex;
WarningHandler g_warning_handler;

}  // namespace

void warn(std::string_view message) {
  std::lock_guard<std::mutex> lock(g_warning_mutex);
  if (g_warning_handler) {
    g_warning_handler(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(g_warning_mutex);
  return std::exchange(g_warning_handler, std::move(handler));
}

void add_counts(TermCounts& into, const TermCounts& from) {
  for (const auto& [term, count] : from) into[term] += count;
}

std::int64_t total_count(const TermCounts& counts) {
  std::int64_t total = 0;
  for (const auto& [term, count] : counts) total += count;
  return total;
}

}  // namespace tilebars
