// Copyright 2026 The qmetric Authors
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

#include "qmetric/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qmetric/errors.hpp"

namespace qmetric {

namespace {

using json = nlohmann::json;

// Character reader that remembers on which line the last two characters
// sat. The JSON lexer reads one character past a number, so number values
// use the older of the two.
struct LineState {
  int line = 1;
  int last = 1;
  int prev = 1;
};

class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, LineState* state) : p_(p), state_(state) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    state_->prev = state_->last;
    state_->last = state_->line;
    if (*p_ == '\n') ++state_->line;
    ++p_;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator old = *this;
    ++*this;
    return old;
  }
  friend bool operator==(const CountingIterator& a, const CountingIterator& b) { return a.p_ == b.p_; }

 private:
  const char* p_ = nullptr;
  LineState* state_ = nullptr;
};

struct Node {
  enum class Kind { null, boolean, integer, real, string, array, object };
  Kind kind = Kind::null;
  int line = 0;
  double number = 0.0;
  long long integer = 0;
  bool integer_in_range = true;
  std::string text;
  std::vector<Node> items;
  std::vector<std::pair<std::string, Node>> members;

  bool is_number() const { return kind == Kind::integer || kind == Kind::real; }
  const Node* find(const std::string& key) const {
    for (const auto& m : members) {
      if (m.first == key) return &m.second;
    }
    return nullptr;
  }
};

class TreeBuilder {
 public:
  explicit TreeBuilder(LineState* state) : state_(state) {}

  Node root;

  bool null() { return add(Node::Kind::null, state_->last); }
  bool boolean(bool) { return add(Node::Kind::boolean, state_->last); }
  bool number_integer(json::number_integer_t v) {
    Node& n = place(Node::Kind::integer, state_->prev);
    n.integer = v;
    n.number = static_cast<double>(v);
    return true;
  }
  bool number_unsigned(json::number_unsigned_t v) {
    Node& n = place(Node::Kind::integer, state_->prev);
    n.integer_in_range = v <= static_cast<json::number_unsigned_t>(std::numeric_limits<long long>::max());
    n.integer = n.integer_in_range ? static_cast<long long>(v) : 0;
    n.number = static_cast<double>(v);
    return true;
  }
  bool number_float(json::number_float_t v, const json::string_t&) {
    Node& n = place(Node::Kind::real, state_->prev);
    n.number = v;
    return true;
  }
  bool string(json::string_t& s) {
    place(Node::Kind::string, state_->last).text = s;
    return true;
  }
  bool binary(json::binary_t&) { return add(Node::Kind::null, state_->last); }
  bool start_object(std::size_t) {
    stack_.push_back(&place(Node::Kind::object, state_->last));
    return true;
  }
  bool key(json::string_t& k) {
    pending_key_ = k;
    key_line_ = state_->last;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) {
    stack_.push_back(&place(Node::Kind::array, state_->last));
    return true;
  }
  bool end_array() {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) {
    // Strip the library's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix.
    std::string msg = ex.what();
    const auto colon = msg.find(": ");
    if (colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError("invalid JSON: " + msg, state_->last);
  }

 private:
  bool add(Node::Kind kind, int line) {
    place(kind, line);
    return true;
  }
  Node& place(Node::Kind kind, int line) {
    Node* n = nullptr;
    if (stack_.empty()) {
      n = &root;
    } else if (stack_.back()->kind == Node::Kind::array) {
      n = &stack_.back()->items.emplace_back();
    } else {
      Node* obj = stack_.back();
      for (const auto& m : obj->members) {
        if (m.first == pending_key_) throw ParseError("duplicate key \"" + pending_key_ + "\"", key_line_);
      }
      n = &obj->members.emplace_back(pending_key_, Node{}).second;
    }
    n->kind = kind;
    n->line = line;
    return *n;
  }

  LineState* state_;
  std::vector<Node*> stack_;
  std::string pending_key_;
  int key_line_ = 0;
};

Node parse_tree(std::string_view text) {
  LineState state;
  TreeBuilder builder(&state);
  CountingIterator first(text.data(), &state);
  CountingIterator last(text.data() + text.size(), &state);
  json::sax_parse(first, last, &builder);
  return std::move(builder.root);
}

[[noreturn]] void fail(const Node& at, const std::string& what) { throw ParseError(what, at.line); }

const Node& require(const Node& obj, const std::string& key, const std::string& where) {
  const Node* n = obj.find(key);
  if (n == nullptr) fail(obj, where + " is missing \"" + key + "\"");
  return *n;
}

void reject_unknown(const Node& obj, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& m : obj.members) {
    bool ok = false;
    for (const char* k : known) ok = ok || m.first == k;
    if (!ok) fail(m.second, where + " has unknown field \"" + m.first + "\"");
  }
}

int positive_int(const Node& n, const std::string& what) {
  if (n.kind != Node::Kind::integer || !n.integer_in_range || n.integer < 1 ||
      n.integer > std::numeric_limits<int>::max()) {
    fail(n, what + " must be a positive integer");
  }
  return static_cast<int>(n.integer);
}

ObjectState read_state(const Node& n, const std::string& what) {
  if (n.kind == Node::Kind::null) fail(n, what + " is null; gaps are not allowed, split the trajectory instead");
  if (n.kind != Node::Kind::array) fail(n, what + " must be an array of numbers");
  if (n.items.empty()) fail(n, what + " has no coordinates");
  std::vector<double> coords;
  coords.reserve(n.items.size());
  for (const auto& v : n.items) {
    if (!v.is_number()) fail(v, what + " has a non-numeric coordinate");
    if (!std::isfinite(v.number)) fail(v, what + " has a coordinate out of range");
    coords.push_back(v.number);
  }
  return ObjectState(std::move(coords));
}

TrajectorySet build_trajectory_set(const Node& root) {
  if (root.kind != Node::Kind::object) fail(root, "trajectory file must be a JSON object");
  reject_unknown(root, {"T", "trajectories"}, "trajectory file");
  const int T = positive_int(require(root, "T", "trajectory file"), "\"T\"");
  const Node& list = require(root, "trajectories", "trajectory file");
  if (list.kind != Node::Kind::array) fail(list, "\"trajectories\" must be an array");

  std::vector<Trajectory> out;
  out.reserve(list.items.size());
  std::size_t dim = 0;
  for (std::size_t i = 0; i < list.items.size(); ++i) {
    const Node& t = list.items[i];
    const std::string where = "trajectory " + std::to_string(i);
    if (t.kind != Node::Kind::object) fail(t, where + " must be an object");
    reject_unknown(t, {"start", "states"}, where);
    const Node& start_node = require(t, "start", where);
    const int start = positive_int(start_node, where + " \"start\"");
    if (start > T) fail(start_node, where + " starts at step " + std::to_string(start) + " beyond T=" + std::to_string(T));
    const Node& states_node = require(t, "states", where);
    if (states_node.kind != Node::Kind::array) fail(states_node, where + " \"states\" must be an array");
    if (states_node.items.empty()) fail(states_node, where + " has no states");
    std::vector<ObjectState> states;
    states.reserve(states_node.items.size());
    for (std::size_t s = 0; s < states_node.items.size(); ++s) {
      const Node& sn = states_node.items[s];
      const long long step = static_cast<long long>(start) + static_cast<long long>(s);
      const std::string what = where + " state at step " + std::to_string(step);
      if (step > T) fail(sn, what + " is beyond T=" + std::to_string(T));
      states.push_back(read_state(sn, what));
      if (dim == 0) dim = states.back().dim();
      if (states.back().dim() != dim) {
        fail(sn, what + " has dimension " + std::to_string(states.back().dim()) + ", expected " + std::to_string(dim));
      }
    }
    out.emplace_back(start, std::move(states));
  }
  return TrajectorySet(T, std::move(out));
}

ObjectSet build_object_set(const Node& root) {
  if (root.kind != Node::Kind::object) fail(root, "object file must be a JSON object");
  reject_unknown(root, {"objects"}, "object file");
  const Node& list = require(root, "objects", "object file");
  if (list.kind != Node::Kind::array) fail(list, "\"objects\" must be an array");
  std::vector<ObjectState> out;
  for (std::size_t i = 0; i < list.items.size(); ++i) {
    out.push_back(read_state(list.items[i], "object " + std::to_string(i)));
    if (out.back().dim() != out.front().dim()) fail(list.items[i], "object " + std::to_string(i) + " has a different dimension");
  }
  return ObjectSet(std::move(out));
}

void append_state(std::string& out, const ObjectState& s) {
  out += '[';
  for (std::size_t d = 0; d < s.dim(); ++d) {
    if (d > 0) out += ", ";
    out += format_number(s[d]);
  }
  out += ']';
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", 0, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ParseError("cannot read file", 0, path);
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("cannot write " + path);
}

TrajectorySet parse_trajectory_set(std::string_view text) { return build_trajectory_set(parse_tree(text)); }

TrajectorySet load_trajectory_set(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_trajectory_set(text);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path);
  }
}

std::string to_json(const TrajectorySet& set) {
  std::string out = "{\n  \"T\": " + std::to_string(set.window()) + ",\n  \"trajectories\": [";
  for (std::size_t i = 0; i < set.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"start\": " + std::to_string(set[i].start()) + ", \"states\": [";
    for (std::size_t s = 0; s < set[i].duration(); ++s) {
      if (s > 0) out += ", ";
      append_state(out, set[i].states()[s]);
    }
    out += "]}";
  }
  out += set.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

void save_trajectory_set(const std::string& path, const TrajectorySet& set) { write_text_file(path, to_json(set)); }

ObjectSet parse_object_set(std::string_view text) { return build_object_set(parse_tree(text)); }

std::string to_json(const ObjectSet& set) {
  std::string out = "{\"objects\": [";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0) out += ", ";
    append_state(out, set[i]);
  }
  out += "]}\n";
  return out;
}

ObjectSet parse_objects_or_slice(std::string_view text, int step) {
  const Node root = parse_tree(text);
  if (root.kind == Node::Kind::object && root.find("objects") != nullptr) return build_object_set(root);
  const TrajectorySet set = build_trajectory_set(root);
  if (step < 1 || step > set.window()) {
    throw RangeError("time step " + std::to_string(step) + " outside window [1, " + std::to_string(set.window()) + "]");
  }
  return objects_at(set, step);
}

ObjectSet load_objects_or_slice(const std::string& path, int step) {
  const std::string text = read_text_file(path);
  try {
    return parse_objects_or_slice(text, step);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), path);
  }
}

}  // namespace qmetric
