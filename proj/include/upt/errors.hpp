// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace upt {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define UPT_DEFINE_ERROR(Name)                                                 \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& what) : Error(#Name, what) {}             \
  };

UPT_DEFINE_ERROR(Disconnected)
UPT_DEFINE_ERROR(SelfLoop)
UPT_DEFINE_ERROR(DuplicateEdge)
UPT_DEFINE_ERROR(UnknownVertex)
UPT_DEFINE_ERROR(NonPlanarRotation)
UPT_DEFINE_ERROR(OddSwitchCount)
UPT_DEFINE_ERROR(NotBiconnected)
UPT_DEFINE_ERROR(NonPlanarSkeleton)
UPT_DEFINE_ERROR(TurnOutOfRange)
UPT_DEFINE_ERROR(NotBoring)
UPT_DEFINE_ERROR(NotThinRepeat)
UPT_DEFINE_ERROR(NegativeDemand)
UPT_DEFINE_ERROR(TooLarge)
UPT_DEFINE_ERROR(UsageError)

#undef UPT_DEFINE_ERROR

class CycleFound : public Error {
public:
  explicit CycleFound(std::vector<std::string> cycle)
      : Error("CycleFound", join(cycle)), cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
  static std::string join(const std::vector<std::string>& c) {
    std::string s;
    for (const auto& v : c) s += (s.empty() ? "" : " -> ") + v;
    return s;
  }
  std::vector<std::string> cycle_;
};

class ParseError : public Error {
public:
  ParseError(int line, const std::string& what)
      : Error("ParseError", "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

}  // namespace upt
