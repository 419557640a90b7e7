// Copyright 2026 The srlproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "srlproj/service.h"

#include <unistd.h>

#include <atomic>
#include <fstream>

#include <nlohmann/json.hpp>

#include "httplib.h"

namespace srlproj {
namespace {

using nlohmann::json;

constexpr const char *kLogSchema = "srlproj.service_log";

void Reply(httplib::Response &res, int status, const json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json ErrorBody(const std::string &message) { return {{"error", message}}; }

}  // namespace

const char *AssignmentStateName(AssignmentState state) {
  switch (state) {
    case AssignmentState::kOpen:
      return "open";
    case AssignmentState::kInProgress:
      return "in_progress";
    case AssignmentState::kSubmitted:
      return "submitted";
  }
  return "?";
}

AnnotationStore::AnnotationStore(std::vector<AnnotationTask> tasks,
                                 std::vector<std::string> coders,
                                 const std::string &log_path)
    : tasks_(std::move(tasks)), coders_(std::move(coders)) {
  for (size_t i = 0; i < tasks_.size(); ++i) {
    if (!task_positions_.emplace(tasks_[i].task_id, i).second) {
      throw Error("duplicate task id " + std::to_string(tasks_[i].task_id));
    }
  }
  for (size_t i = 0; i < coders_.size(); ++i) {
    if (!coder_positions_.emplace(coders_[i], i).second) {
      throw Error("duplicate coder id '" + coders_[i] + "'");
    }
  }
  state_ = std::make_shared<const State>(tasks_.size() * coders_.size());
  Replay(log_path);
}

AnnotationStore::~AnnotationStore() {
  if (log_ != nullptr) std::fclose(log_);
}

std::shared_ptr<const AnnotationStore::State> AnnotationStore::Snapshot()
    const {
  return std::atomic_load(&state_);
}

void AnnotationStore::Publish(std::shared_ptr<const State> state) {
  std::atomic_store(&state_, std::move(state));
}

std::optional<size_t> AnnotationStore::TaskPosition(int task_id) const {
  auto it = task_positions_.find(task_id);
  if (it == task_positions_.end()) return std::nullopt;
  return it->second;
}

std::optional<size_t> AnnotationStore::CoderPosition(
    const std::string &coder) const {
  auto it = coder_positions_.find(coder);
  if (it == coder_positions_.end()) return std::nullopt;
  return it->second;
}

void AnnotationStore::Replay(const std::string &log_path) {
  State state = *state_;
  bool have_header = false;
  {
    std::ifstream in(log_path, std::ios::binary);
    std::string line;
    int line_number = 0;
    while (in && std::getline(in, line)) {
      ++line_number;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      auto fail = [&](const std::string &what) {
        throw ParseError(log_path + ": " + what, line_number);
      };
      json record;
      try {
        record = json::parse(line);
      } catch (const json::parse_error &e) {
        fail(std::string("invalid JSON: ") + e.what());
      }
      if (!have_header) {
        if (record.value("schema", "") != kLogSchema) fail("not a service log");
        have_header = true;
        continue;
      }
      const std::string event = record.value("event", "");
      const auto task = TaskPosition(record.value("task_id", -1));
      const auto coder = CoderPosition(record.value("coder_id", ""));
      if (!task || !coder) fail("unknown task or coder");
      Slot &slot = state[SlotIndex(*coder, *task)];
      const int version = record.value("version", -1);
      if (event == "claim") {
        if (slot.state != AssignmentState::kOpen || version != slot.version + 1) {
          fail("claim does not follow the recorded state");
        }
        slot = {AssignmentState::kInProgress, version};
      } else if (event == "submit") {
        if (!record.value("accepted", false)) continue;
        if (slot.state != AssignmentState::kInProgress ||
            record.value("expected_version", -1) != slot.version ||
            version != slot.version + 1) {
          fail("submit does not follow the recorded state");
        }
        slot = {AssignmentState::kSubmitted, version};
      } else {
        fail("unknown event '" + event + "'");
      }
    }
  }
  log_ = std::fopen(log_path.c_str(), "ab");
  if (log_ == nullptr) throw Error("cannot open log '" + log_path + "'");
  if (!have_header) {
    AppendLog(json{{"schema", kLogSchema}, {"version", 1}}.dump());
  }
  Publish(std::make_shared<const State>(std::move(state)));
}

void AnnotationStore::AppendLog(const std::string &line) {
  if (std::fputs(line.c_str(), log_) < 0 || std::fputc('\n', log_) == EOF ||
      std::fflush(log_) != 0) {
    throw Error("failed to append to the service log");
  }
  ::fsync(::fileno(log_));
}

std::optional<AnnotationStore::Next> AnnotationStore::NextTask(
    const std::string &coder) {
  const auto c = CoderPosition(coder);
  if (!c) throw Error("unknown coder '" + coder + "'");
  std::lock_guard<std::mutex> lock(writer_);
  std::shared_ptr<const State> current = Snapshot();
  std::optional<size_t> open;
  for (size_t t = 0; t < tasks_.size(); ++t) {
    const Slot &slot = (*current)[SlotIndex(*c, t)];
    if (slot.state == AssignmentState::kInProgress) {
      return Next{&tasks_[t], slot.version};
    }
    if (!open && slot.state == AssignmentState::kOpen) open = t;
  }
  if (!open) return std::nullopt;
  auto next = std::make_shared<State>(*current);
  Slot &slot = (*next)[SlotIndex(*c, *open)];
  slot = {AssignmentState::kInProgress, slot.version + 1};
  AppendLog(json{{"event", "claim"},
                 {"task_id", tasks_[*open].task_id},
                 {"coder_id", coder},
                 {"version", slot.version}}
                .dump());
  const int version = slot.version;
  Publish(std::move(next));
  return Next{&tasks_[*open], version};
}

SubmitResult AnnotationStore::Submit(int task_id, const std::string &coder,
                                     const AnnotationResponse &response,
                                     int expected_version) {
  SubmitResult result;
  const auto t = TaskPosition(task_id);
  const auto c = CoderPosition(coder);
  if (!t || !c) {
    result.status = SubmitStatus::kNotFound;
    result.message = !t ? "unknown task " + std::to_string(task_id)
                        : "unknown coder '" + coder + "'";
    return result;
  }
  result.errors = ValidateResponse(response, tasks_[*t]);
  if (response.coder_id != coder) {
    result.errors.push_back({"response.coder_id", "does not match coder_id"});
  }
  if (!result.errors.empty()) {
    result.status = SubmitStatus::kInvalid;
    result.message = "schema violation";
    return result;
  }

  std::lock_guard<std::mutex> lock(writer_);
  std::shared_ptr<const State> current = Snapshot();
  const Slot &slot = (*current)[SlotIndex(*c, *t)];
  json entry = {{"event", "submit"},
                {"task_id", task_id},
                {"coder_id", coder},
                {"expected_version", expected_version}};
  if (slot.state != AssignmentState::kInProgress ||
      slot.version != expected_version) {
    entry["accepted"] = false;
    entry["version"] = slot.version;
    entry["response"] = ToJson(response);
    AppendLog(entry.dump());
    result.status = SubmitStatus::kConflict;
    result.version = slot.version;
    result.message = slot.state == AssignmentState::kOpen
                         ? "task not claimed by this coder"
                         : "version conflict";
    return result;
  }
  auto next = std::make_shared<State>(*current);
  Slot &updated = (*next)[SlotIndex(*c, *t)];
  updated = {AssignmentState::kSubmitted, slot.version + 1};
  entry["accepted"] = true;
  entry["version"] = updated.version;
  entry["response"] = ToJson(response);
  AppendLog(entry.dump());
  result.status = SubmitStatus::kAccepted;
  result.version = updated.version;
  Publish(std::move(next));
  return result;
}

const AnnotationTask *AnnotationStore::FindTask(int task_id) const {
  const auto t = TaskPosition(task_id);
  return t ? &tasks_[*t] : nullptr;
}

bool AnnotationStore::HasCoder(const std::string &coder) const {
  return CoderPosition(coder).has_value();
}

std::optional<TaskAssignment> AnnotationStore::Assignment(
    int task_id, const std::string &coder) const {
  const auto t = TaskPosition(task_id);
  const auto c = CoderPosition(coder);
  if (!t || !c) return std::nullopt;
  const Slot &slot = (*Snapshot())[SlotIndex(*c, *t)];
  return TaskAssignment{task_id, coder, slot.state, slot.version};
}

std::map<std::string, CoderProgress> AnnotationStore::Progress() const {
  std::shared_ptr<const State> snapshot = Snapshot();
  std::map<std::string, CoderProgress> progress;
  for (size_t c = 0; c < coders_.size(); ++c) {
    CoderProgress &p = progress[coders_[c]];
    for (size_t t = 0; t < tasks_.size(); ++t) {
      switch ((*snapshot)[SlotIndex(c, t)].state) {
        case AssignmentState::kOpen:
          ++p.open;
          break;
        case AssignmentState::kInProgress:
          ++p.in_progress;
          break;
        case AssignmentState::kSubmitted:
          ++p.submitted;
          break;
      }
    }
  }
  return progress;
}

AnnotationServer::AnnotationServer(AnnotationStore *store,
                                   const std::string &static_dir)
    : store_(store), server_(std::make_unique<httplib::Server>()) {
  httplib::Server &server = *server_;

  server.Get("/api/tasks/next", [this](const httplib::Request &req,
                                       httplib::Response &res) {
    const std::string coder = req.get_param_value("coder");
    if (!store_->HasCoder(coder)) {
      Reply(res, 404, ErrorBody("unknown coder '" + coder + "'"));
      return;
    }
    std::optional<AnnotationStore::Next> next = store_->NextTask(coder);
    if (!next) {
      res.status = 204;
      return;
    }
    Reply(res, 200,
          {{"task", ToJson(*next->task)},
           {"version", next->version},
           {"coder_id", coder}});
  });

  server.Get(R"(/api/tasks/(\d+))", [this](const httplib::Request &req,
                                           httplib::Response &res) {
    const AnnotationTask *task = store_->FindTask(std::stoi(req.matches[1]));
    if (task == nullptr) {
      Reply(res, 404, ErrorBody("unknown task"));
      return;
    }
    Reply(res, 200, ToJson(*task));
  });

  server.Post(R"(/api/tasks/(\d+)/submit)", [this](const httplib::Request &req,
                                                   httplib::Response &res) {
    const int task_id = std::stoi(req.matches[1]);
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::parse_error &e) {
      Reply(res, 400, ErrorBody(std::string("invalid JSON: ") + e.what()));
      return;
    }
    std::vector<FieldError> errors;
    if (!body.is_object()) {
      Reply(res, 400, ErrorBody("expected a JSON object"));
      return;
    }
    const std::string coder =
        body.contains("coder_id") && body["coder_id"].is_string()
            ? body["coder_id"].get<std::string>()
            : "";
    if (coder.empty()) errors.push_back({"coder_id", "expected a string"});
    int expected_version = 0;
    if (body.contains("expected_version") &&
        body["expected_version"].is_number_integer()) {
      expected_version = body["expected_version"].get<int>();
    } else {
      errors.push_back({"expected_version", "expected an integer"});
    }
    AnnotationResponse response;
    try {
      response = ResponseFromJson(body.value("response", json()));
    } catch (const SchemaError &e) {
      for (const FieldError &f : e.errors()) {
        errors.push_back({"response" + (f.path.empty() ? "" : "." + f.path),
                          f.message});
      }
    }
    if (errors.empty() && response.task_id != task_id) {
      errors.push_back({"response.task_id", "does not match the URL"});
    }
    SubmitResult result;
    if (errors.empty()) {
      result = store_->Submit(task_id, coder, response, expected_version);
      errors = result.errors;
    }
    if (!errors.empty()) {
      json list = json::array();
      for (const FieldError &f : errors) {
        list.push_back({{"path", f.path}, {"message", f.message}});
      }
      Reply(res, 422, {{"error", "schema violation"}, {"errors", list}});
      return;
    }
    switch (result.status) {
      case SubmitStatus::kAccepted:
        Reply(res, 200, {{"version", result.version}, {"state", "submitted"}});
        break;
      case SubmitStatus::kConflict:
        Reply(res, 409,
              {{"error", result.message}, {"current_version", result.version}});
        break;
      case SubmitStatus::kNotFound:
        Reply(res, 404, ErrorBody(result.message));
        break;
      case SubmitStatus::kInvalid:
        Reply(res, 422, ErrorBody(result.message));
        break;
    }
  });

  server.Get("/api/progress", [this](const httplib::Request &,
                                     httplib::Response &res) {
    json coders = json::object();
    for (const auto &[coder, p] : store_->Progress()) {
      coders[coder] = {{"open", p.open},
                       {"in_progress", p.in_progress},
                       {"submitted", p.submitted}};
    }
    Reply(res, 200, {{"tasks", store_->num_tasks()}, {"coders", coders}});
  });

  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    throw Error("static directory '" + static_dir + "' does not exist");
  }
}

AnnotationServer::~AnnotationServer() = default;

bool AnnotationServer::Listen(const std::string &host, int port) {
  return server_->listen(host, port);
}

int AnnotationServer::BindToAnyPort(const std::string &host) {
  return server_->bind_to_any_port(host);
}

bool AnnotationServer::ListenAfterBind() { return server_->listen_after_bind(); }

void AnnotationServer::Stop() { server_->stop(); }

void AnnotationServer::WaitUntilReady() const { server_->wait_until_ready(); }

}  // namespace srlproj
