#include "dialect/pattern.hpp"

namespace dialect {

MessageUniverse::MessageUniverse(std::vector<std::string> names) : names_(std::move(names)) {
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    if (names_[i].empty()) throw ValidationError("message name at position " + std::to_string(i) + " is empty");
    auto [it, inserted] = index_.emplace(names_[i], i);
    if (!inserted) throw ValidationError("duplicate message name '" + names_[i] + "'");
  }
}

MessageUniverse MessageUniverse::placeholder(int width) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) names.push_back("m" + std::to_string(i));
  return MessageUniverse(std::move(names));
}

const std::string& MessageUniverse::name(int i) const {
  if (i < 0 || i >= size())
    throw IndexError("message index " + std::to_string(i) + " out of range for universe of size " +
                     std::to_string(size()));
  return names_[static_cast<std::size_t>(i)];
}

int MessageUniverse::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

int MessageUniverse::require(std::string_view name) const {
  int i = index_of(name);
  if (i < 0) throw IndexError("unknown message '" + std::string(name) + "'");
  return i;
}

std::string MessagePattern::to_string(const MessageUniverse& u) const {
  if (u.size() != width())
    throw WidthMismatchError("pattern width " + std::to_string(width()) +
                             " does not match universe of size " + std::to_string(u.size()));
  std::string out = "{";
  bool first = true;
  bits_.for_each_set([&](int i) {
    if (!first) out += ' ';
    out += u.name(i);
    first = false;
  });
  out += '}';
  return out;
}

}  // namespace dialect
