#include "dqw/cli/report.hpp"

#include <cstdio>

namespace dqw::cli {

namespace {

nlohmann::ordered_json check_json(const CheckReport& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  if (!c.pass) {
    j["order"] = c.order;
    j["witness"] = c.witness;
    j["residual"] = c.residual;
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

std::string value_text(const nlohmann::ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

std::string status_str(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Value:
      return "value";
  }
  return "value";
}

void Report::add_check(CheckReport c) {
  if (!c.pass)
    status = Status::Fail;
  else if (status == Status::Value)
    status = Status::Pass;
  checks.push_back(std::move(c));
}

bool Report::passed() const { return status != Status::Fail; }

int Report::exit_code() const { return passed() ? 0 : 1; }

nlohmann::ordered_json Report::json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["status"] = status_str(status);
  if (!checks.empty()) {
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) j["checks"].push_back(check_json(c));
  }
  if (!values.empty()) j["values"] = values;
  if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
  if (elapsed) j["elapsed_seconds"] = *elapsed;
  return j;
}

std::string Report::text() const {
  std::string out = "command: " + command + "\nstatus: " + status_str(status) + "\n";
  for (const auto& c : checks) {
    out += "check " + c.name + ": " + (c.pass ? "pass" : "fail");
    if (!c.pass) {
      out += " at order " + std::to_string(c.order);
      if (!c.witness.empty()) {
        out += "; witness";
        for (std::size_t k = 0; k < c.witness.size(); ++k) out += (k ? ", " : " ") + c.witness[k];
      }
      if (!c.residual.empty()) out += "; residual " + c.residual;
    }
    if (!c.note.empty()) out += " (" + c.note + ")";
    out += "\n";
  }
  for (const auto& [key, v] : values.items()) {
    if (v.is_array()) {
      out += key + ":\n";
      for (const auto& e : v) out += "  " + value_text(e) + "\n";
    } else {
      out += key + ": " + value_text(v) + "\n";
    }
  }
  for (const auto& d : diagnostics) out += "  " + d + "\n";
  if (elapsed) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "elapsed: %.3f s\n", *elapsed);
    out += buf;
  }
  return out;
}

}  // namespace dqw::cli
