#include "hyperfol/report.hpp"

#include <chrono>
#include <ctime>

namespace hyperfol::report {

Json make_report(const std::string& command) {
  Json doc;
  doc["command"] = command;
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  doc["timestamp"] = buf;
  return doc;
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace hyperfol::report
