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

#ifndef SRLPROJ_SERVICE_H_
#define SRLPROJ_SERVICE_H_

#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "srlproj/curation.h"

namespace httplib {
class Server;
}

namespace srlproj {

enum class AssignmentState { kOpen, kInProgress, kSubmitted };

const char *AssignmentStateName(AssignmentState state);

struct TaskAssignment {
  int task_id = 0;
  std::string coder_id;
  AssignmentState state = AssignmentState::kOpen;
  // Incremented on every write to this assignment.
  int version = 0;
};

struct CoderProgress {
  int open = 0;
  int in_progress = 0;
  int submitted = 0;

  bool operator==(const CoderProgress &) const = default;
};

enum class SubmitStatus { kAccepted, kConflict, kInvalid, kNotFound };

struct SubmitResult {
  SubmitStatus status = SubmitStatus::kInvalid;
  // New version when accepted, current version otherwise.
  int version = 0;
  std::string message;
  std::vector<FieldError> errors;
};

// Task assignments for a fixed set of coders, persisted as an append-only
// JSON Lines log. Every coder is assigned every task. Writers are serialized
// by a mutex; readers work on an immutable snapshot and never block.
//
// Log records after the header:
//   {"event":"claim","task_id":..,"coder_id":..,"version":..}
//   {"event":"submit","task_id":..,"coder_id":..,"expected_version":..,
//    "accepted":true|false,"version":..,"response":{..}}
// Rejected (stale) submits are logged with "accepted":false and change no
// state. Replaying the log on construction restores the exact state.
class AnnotationStore {
 public:
  AnnotationStore(std::vector<AnnotationTask> tasks,
                  std::vector<std::string> coders, const std::string &log_path);
  ~AnnotationStore();

  AnnotationStore(const AnnotationStore &) = delete;
  AnnotationStore &operator=(const AnnotationStore &) = delete;

  struct Next {
    const AnnotationTask *task;
    int version;
  };

  // The coder's in-progress task if there is one, else the lowest open task,
  // which is claimed. nullopt when nothing is left. Throws Error for an
  // unregistered coder.
  std::optional<Next> NextTask(const std::string &coder);

  SubmitResult Submit(int task_id, const std::string &coder,
                      const AnnotationResponse &response,
                      int expected_version);

  const AnnotationTask *FindTask(int task_id) const;
  bool HasCoder(const std::string &coder) const;
  std::optional<TaskAssignment> Assignment(int task_id,
                                           const std::string &coder) const;
  std::map<std::string, CoderProgress> Progress() const;
  int num_tasks() const { return static_cast<int>(tasks_.size()); }

 private:
  struct Slot {
    AssignmentState state = AssignmentState::kOpen;
    int version = 0;
  };
  using State = std::vector<Slot>;

  std::shared_ptr<const State> Snapshot() const;
  void Publish(std::shared_ptr<const State> state);
  std::optional<size_t> TaskPosition(int task_id) const;
  std::optional<size_t> CoderPosition(const std::string &coder) const;
  size_t SlotIndex(size_t coder, size_t task) const {
    return coder * tasks_.size() + task;
  }
  void Replay(const std::string &log_path);
  void AppendLog(const std::string &line);

  std::vector<AnnotationTask> tasks_;
  std::vector<std::string> coders_;
  std::map<int, size_t> task_positions_;
  std::map<std::string, size_t> coder_positions_;

  std::mutex writer_;
  std::FILE *log_ = nullptr;
  std::shared_ptr<const State> state_;
};

// JSON-over-HTTP facade:
//   GET  /api/tasks/next?coder=ID
//   GET  /api/tasks/{id}
//   POST /api/tasks/{id}/submit  {"coder_id","expected_version","response"}
//   GET  /api/progress
// plus static files from `static_dir` under "/" when it is non-empty.
class AnnotationServer {
 public:
  AnnotationServer(AnnotationStore *store, const std::string &static_dir = "");
  ~AnnotationServer();

  // Blocks until Stop().
  bool Listen(const std::string &host, int port);
  // Binds an ephemeral port and returns it (or -1); serve with
  // ListenAfterBind().
  int BindToAnyPort(const std::string &host);
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  AnnotationStore *store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace srlproj

#endif  // SRLPROJ_SERVICE_H_
