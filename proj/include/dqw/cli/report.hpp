#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqw/identity.hpp"

namespace dqw::cli {

enum class Status { Pass, Fail, Value };

/// Deterministic output of one command. Key order follows insertion.
struct Report {
  std::string command;
  Status status = Status::Value;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  std::vector<CheckReport> checks;
  std::vector<std::string> diagnostics;
  std::optional<double> elapsed;

  /// Records a check; any failure turns the status to fail.
  void add_check(CheckReport c);
  void set(const std::string& key, nlohmann::ordered_json v) { values[key] = std::move(v); }
  bool passed() const;
  /// 0 for pass or value, 1 for failure.
  int exit_code() const;

  nlohmann::ordered_json json() const;
  std::string text() const;
};

std::string status_str(Status s);

}  // namespace dqw::cli
