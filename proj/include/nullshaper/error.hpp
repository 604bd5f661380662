// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace nullshaper {

enum class ErrorKind {
  InvalidArgument,
  Validation,
  Convergence,
  NoIntersection,
  NotVisible,
  Degenerate,
  Unsupported,
  Io,
};

// Base of every exception thrown by the library. The C API maps `kind()`
// onto its status codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string &what)
      : Error(ErrorKind::InvalidArgument, what) {}
};

class ValidationError : public Error {
public:
  explicit ValidationError(const std::string &what)
      : Error(ErrorKind::Validation, what) {}
};

class NoIntersection : public Error {
public:
  explicit NoIntersection(const std::string &what)
      : Error(ErrorKind::NoIntersection, what) {}
};

class NotVisible : public Error {
public:
  explicit NotVisible(const std::string &what)
      : Error(ErrorKind::NotVisible, what) {}
};

class DegenerateDistribution : public Error {
public:
  explicit DegenerateDistribution(const std::string &what)
      : Error(ErrorKind::Degenerate, what) {}
};

class Unsupported : public Error {
public:
  explicit Unsupported(const std::string &what)
      : Error(ErrorKind::Unsupported, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string &what) : Error(ErrorKind::Io, what) {}
};

} // namespace nullshaper
