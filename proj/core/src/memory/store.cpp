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

#include "skillforge/memory/store.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <cctype>
#include <json.hpp>

#include "internal/embedded.hpp"
#include "skillforge/common.hpp"
#include "skillforge/memory/blob.hpp"

namespace skillforge::memory {
namespace {

using nlohmann::json;

const std::set<std::string> kCoreTables = {"hardware",          "behaviours", "skills",
                                           "executions",        "documents",  "schema_extensions",
                                           "extension_tables",  "schema_migrations"};

// RAII prepared statement.
class Statement {
 public:
  Statement(sqlite3* db, const std::string& sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK) {
      throw StorageError(std::string("prepare failed: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  void bind(int i, const std::string& v) {
    check(sqlite3_bind_text(stmt_, i, v.c_str(), static_cast<int>(v.size()), SQLITE_TRANSIENT));
  }
  void bind(int i, std::int64_t v) { check(sqlite3_bind_int64(stmt_, i, v)); }
  void bind(int i, double v) { check(sqlite3_bind_double(stmt_, i, v)); }
  void bind_blob(int i, const std::vector<std::uint8_t>& v) {
    check(sqlite3_bind_blob(stmt_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT));
  }

  // True while rows remain.
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw StorageError(std::string("step failed: ") + sqlite3_errmsg(db_));
  }

  std::int64_t integer(int col) const { return sqlite3_column_int64(stmt_, col); }
  double real(int col) const { return sqlite3_column_double(stmt_, col); }
  std::string text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    return p ? std::string(reinterpret_cast<const char*>(p), static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col)))
             : std::string();
  }
  std::span<const std::uint8_t> blob(int col) const {
    const auto* p = static_cast<const std::uint8_t*>(sqlite3_column_blob(stmt_, col));
    return {p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col))};
  }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) throw StorageError(std::string("bind failed: ") + sqlite3_errmsg(db_));
  }

  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

bool valid_identifier(const std::string& name) {
  if (name.empty() || name.size() > 64) return false;
  if (!(std::islower(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '_';
  });
}

std::string normalized_type(std::string type) {
  std::transform(type.begin(), type.end(), type.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (type != "INTEGER" && type != "REAL" && type != "TEXT" && type != "BLOB") {
    throw ValidationError("unsupported column type '" + type + "'");
  }
  return type;
}

json definition_json(const SchemaExtension& ext) {
  json tables = json::array();
  for (const auto& t : ext.tables) {
    json cols = json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"type", c.type}});
    tables.push_back({{"name", t.name}, {"columns", cols}});
  }
  return {{"owner", ext.owner}, {"version", ext.version}, {"tables", tables}};
}

ExecutionRecord read_record(const Statement& s) {
  ExecutionRecord r;
  r.id = s.integer(0);
  r.subject = s.text(1);
  r.subject_kind = s.text(2);
  r.start_tick = s.integer(3);
  r.end_tick = s.integer(4);
  r.success = s.integer(5) != 0;
  for (const auto& h : json::parse(s.text(6))) r.hardware_config.insert(h.get<std::string>());
  r.situation = s.text(7);
  r.failure = s.text(8);
  r.sensor = decode_sensor(s.blob(10));
  r.sensor.tick_length = s.real(9);
  r.profile = decode_profile(s.blob(11));
  return r;
}

constexpr const char* kSelectRecord =
    "SELECT id, subject, subject_kind, start_tick, end_tick, success, hardware, situation, "
    "failure, tick_length, sensor, profile FROM executions";

}  // namespace

void check_record(const ExecutionRecord& record) {
  if (record.subject.empty()) throw ValidationError("execution record without subject");
  if (record.end_tick < record.start_tick) throw ValidationError("execution ends before it starts");
  record.sensor.check_shape();
  record.profile.check_shape();
  if (record.sensor.ticks != record.profile.ticks) {
    throw ValidationError("sensor and profile matrices disagree on T");
  }
}

Store::Store(const std::string& path) : path_(path) {
  if (sqlite3_open_v2(path.c_str(), &db_, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                      nullptr) != SQLITE_OK) {
    std::string message = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    throw StorageError("cannot open store '" + path + "': " + message);
  }
  sqlite3_busy_timeout(db_, 5000);
  if (path != ":memory:") {
    exec("PRAGMA journal_mode=WAL");
    exec("PRAGMA synchronous=NORMAL");
  }
  exec("PRAGMA foreign_keys=ON");
  migrate();
}

Store::~Store() { sqlite3_close(db_); }

void Store::exec(const std::string& sql) const {
  char* error = nullptr;
  if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &error) != SQLITE_OK) {
    std::string message = error ? error : "unknown error";
    sqlite3_free(error);
    throw StorageError(message);
  }
}

void Store::migrate() {
  std::lock_guard lock(mutex_);
  exec("CREATE TABLE IF NOT EXISTS schema_migrations (version INTEGER PRIMARY KEY)");
  const auto migrations = embedded::core_migrations();
  for (std::size_t i = 0; i < migrations.size(); ++i) {
    const auto version = static_cast<std::int64_t>(i + 1);
    Statement q(db_, "SELECT 1 FROM schema_migrations WHERE version = ?");
    q.bind(1, version);
    if (q.step()) continue;
    exec("BEGIN");
    try {
      exec(std::string(migrations[i]));
      Statement ins(db_, "INSERT INTO schema_migrations (version) VALUES (?)");
      ins.bind(1, version);
      ins.step();
      exec("COMMIT");
    } catch (...) {
      exec("ROLLBACK");
      throw;
    }
  }
}

std::int64_t Store::persist_execution(const ExecutionRecord& record) {
  if (record.id != 0) throw ConflictError("execution records are append-only");
  check_record(record);
  json hardware = json::array();
  for (const auto& h : record.hardware_config) hardware.push_back(h);

  std::lock_guard lock(mutex_);
  Statement s(db_,
              "INSERT INTO executions (subject, subject_kind, start_tick, end_tick, success, hardware, "
              "situation, failure, tick_length, sensor, profile) VALUES (?,?,?,?,?,?,?,?,?,?,?)");
  s.bind(1, record.subject);
  s.bind(2, record.subject_kind);
  s.bind(3, record.start_tick);
  s.bind(4, record.end_tick);
  s.bind(5, static_cast<std::int64_t>(record.success ? 1 : 0));
  s.bind(6, hardware.dump());
  s.bind(7, record.situation);
  s.bind(8, record.failure);
  s.bind(9, record.sensor.tick_length);
  s.bind_blob(10, encode(record.sensor));
  s.bind_blob(11, encode(record.profile));
  s.step();
  return sqlite3_last_insert_rowid(db_);
}

std::optional<ExecutionRecord> Store::fetch_execution(std::int64_t id) const {
  std::lock_guard lock(mutex_);
  Statement s(db_, std::string(kSelectRecord) + " WHERE id = ?");
  s.bind(1, id);
  if (!s.step()) return std::nullopt;
  return read_record(s);
}

std::vector<ExecutionRecord> Store::fetch_executions(const ExecutionFilter& filter) const {
  if (filter.limit == 0) throw ValidationError("execution filter limit must be positive");
  if (filter.subject && filter.subject->empty()) throw ValidationError("empty subject filter");
  std::string sql = kSelectRecord;
  std::vector<std::string> where;
  if (filter.subject) where.push_back("subject = ?");
  if (filter.success) where.push_back("success = ?");
  for (std::size_t i = 0; i < where.size(); ++i) sql += (i == 0 ? " WHERE " : " AND ") + where[i];
  sql += " ORDER BY start_tick DESC, id DESC LIMIT ?";

  std::lock_guard lock(mutex_);
  Statement s(db_, sql);
  int i = 1;
  if (filter.subject) s.bind(i++, *filter.subject);
  if (filter.success) s.bind(i++, static_cast<std::int64_t>(*filter.success ? 1 : 0));
  s.bind(i, static_cast<std::int64_t>(filter.limit));
  std::vector<ExecutionRecord> out;
  while (s.step()) out.push_back(read_record(s));
  return out;
}

std::size_t Store::execution_count() const {
  std::lock_guard lock(mutex_);
  Statement s(db_, "SELECT COUNT(*) FROM executions");
  s.step();
  return static_cast<std::size_t>(s.integer(0));
}

std::optional<int> Store::installed_version(const std::string& owner) const {
  std::lock_guard lock(mutex_);
  Statement s(db_, "SELECT version FROM schema_extensions WHERE owner = ?");
  s.bind(1, owner);
  if (!s.step()) return std::nullopt;
  return static_cast<int>(s.integer(0));
}

std::vector<std::string> Store::table_columns(const std::string& table) const {
  if (!valid_identifier(table)) throw ValidationError("invalid table name '" + table + "'");
  std::lock_guard lock(mutex_);
  Statement s(db_, "SELECT name FROM pragma_table_info(?)");
  s.bind(1, table);
  std::vector<std::string> out;
  while (s.step()) out.push_back(s.text(0));
  return out;
}

void Store::install_schema(const SchemaExtension& extension) {
  if (extension.owner.empty()) throw ValidationError("schema extension without owner");
  if (extension.version < 1) throw ValidationError("schema extension version must be >= 1");
  std::vector<TableDef> tables = extension.tables;
  for (auto& table : tables) {
    if (!valid_identifier(table.name)) throw ValidationError("invalid table name '" + table.name + "'");
    if (kCoreTables.contains(table.name)) throw ConflictError("table '" + table.name + "' is reserved");
    for (auto& column : table.columns) {
      if (!valid_identifier(column.name) || column.name == "id") {
        throw ValidationError("invalid column name '" + column.name + "'");
      }
      column.type = normalized_type(column.type);
    }
  }

  const auto current = installed_version(extension.owner);
  if (current && *current == extension.version) return;
  if (current && *current > extension.version) {
    throw ValidationError("schema downgrade for '" + extension.owner + "' from version " +
                          std::to_string(*current) + " to " + std::to_string(extension.version));
  }

  std::lock_guard lock(mutex_);
  exec("BEGIN IMMEDIATE");
  try {
    for (const auto& table : tables) {
      Statement owner(db_, "SELECT owner FROM extension_tables WHERE name = ?");
      owner.bind(1, table.name);
      if (owner.step()) {
        if (owner.text(0) != extension.owner) {
          throw ConflictError("table '" + table.name + "' already defined by '" + owner.text(0) + "'");
        }
        Statement cols(db_, "SELECT name FROM pragma_table_info(?)");
        cols.bind(1, table.name);
        std::set<std::string> existing;
        while (cols.step()) existing.insert(cols.text(0));
        for (const auto& column : table.columns) {
          if (!existing.contains(column.name)) {
            exec("ALTER TABLE " + table.name + " ADD COLUMN " + column.name + " " + column.type);
          }
        }
      } else {
        std::string sql = "CREATE TABLE " + table.name +
                          " (id INTEGER PRIMARY KEY AUTOINCREMENT, execution_id INTEGER REFERENCES executions(id)";
        for (const auto& column : table.columns) sql += ", " + column.name + " " + column.type;
        exec(sql + ")");
        Statement ins(db_, "INSERT INTO extension_tables (name, owner) VALUES (?, ?)");
        ins.bind(1, table.name);
        ins.bind(2, extension.owner);
        ins.step();
      }
    }
    Statement up(db_,
                 "INSERT INTO schema_extensions (owner, version, definition) VALUES (?, ?, ?) "
                 "ON CONFLICT(owner) DO UPDATE SET version = excluded.version, definition = excluded.definition");
    up.bind(1, extension.owner);
    up.bind(2, static_cast<std::int64_t>(extension.version));
    up.bind(3, definition_json(extension).dump());
    up.step();
    exec("COMMIT");
  } catch (...) {
    exec("ROLLBACK");
    throw;
  }
}

void Store::put_document(const std::string& kind, const std::string& key, const std::string& body) {
  std::lock_guard lock(mutex_);
  Statement s(db_,
              "INSERT INTO documents (kind, key, body) VALUES (?, ?, ?) "
              "ON CONFLICT(kind, key) DO UPDATE SET body = excluded.body");
  s.bind(1, kind);
  s.bind(2, key);
  s.bind(3, body);
  s.step();
}

std::optional<std::string> Store::get_document(const std::string& kind, const std::string& key) const {
  std::lock_guard lock(mutex_);
  Statement s(db_, "SELECT body FROM documents WHERE kind = ? AND key = ?");
  s.bind(1, kind);
  s.bind(2, key);
  if (!s.step()) return std::nullopt;
  return s.text(0);
}

std::vector<std::pair<std::string, std::string>> Store::list_documents(const std::string& kind) const {
  std::lock_guard lock(mutex_);
  Statement s(db_, "SELECT key, body FROM documents WHERE kind = ? ORDER BY key");
  s.bind(1, kind);
  std::vector<std::pair<std::string, std::string>> out;
  while (s.step()) out.emplace_back(s.text(0), s.text(1));
  return out;
}

}  // namespace skillforge::memory
