/* Copyright 2026 The SkillForge Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skillforge/memory/matrix.hpp"

struct sqlite3;

namespace skillforge::memory {

struct ExecutionRecord {
  std::int64_t id = 0;  // assigned on persist
  std::string subject;
  std::string subject_kind;  // "skill", "behaviour" or "program"
  std::int64_t start_tick = 0;
  std::int64_t end_tick = 0;
  bool success = false;
  SensorMatrix sensor;
  CallProfileMatrix profile;
  std::set<std::string> hardware_config;
  std::string situation;
  std::string failure;  // empty when no behaviour failed

  friend bool operator==(const ExecutionRecord&, const ExecutionRecord&) = default;
};

// Throws ValidationError when a record breaks its invariants.
void check_record(const ExecutionRecord& record);

struct ExecutionFilter {
  std::optional<std::string> subject;
  std::optional<bool> success;
  std::size_t limit = 100;
};

struct ColumnDef {
  std::string name;
  std::string type;  // INTEGER, REAL, TEXT or BLOB
};

struct TableDef {
  std::string name;
  std::vector<ColumnDef> columns;
};

// Extra tables contributed by a hardware or skill implementation.
struct SchemaExtension {
  std::string owner;
  int version = 1;
  std::vector<TableDef> tables;
};

// Embedded relational experience store. Execution rows are append-only;
// matrices are stored as KDMX blobs.
class Store {
 public:
  // ":memory:" opens a private in-memory database.
  explicit Store(const std::string& path);
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  std::int64_t persist_execution(const ExecutionRecord& record);
  std::optional<ExecutionRecord> fetch_execution(std::int64_t id) const;
  // Conjunctive filter, newest first (start tick descending, then id).
  std::vector<ExecutionRecord> fetch_executions(const ExecutionFilter& filter) const;
  std::size_t execution_count() const;

  void install_schema(const SchemaExtension& extension);
  std::optional<int> installed_version(const std::string& owner) const;
  std::vector<std::string> table_columns(const std::string& table) const;

  // Versioned JSON documents: programs, trained ECMs, curves, session logs.
  void put_document(const std::string& kind, const std::string& key, const std::string& body);
  std::optional<std::string> get_document(const std::string& kind, const std::string& key) const;
  std::vector<std::pair<std::string, std::string>> list_documents(const std::string& kind) const;

  const std::string& path() const { return path_; }

 private:
  void migrate();
  void exec(const std::string& sql) const;

  std::string path_;
  sqlite3* db_ = nullptr;
  mutable std::mutex mutex_;
};

}  // namespace skillforge::memory
