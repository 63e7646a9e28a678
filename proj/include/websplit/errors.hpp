#pragma once

#include <stdexcept>
#include <string>

namespace websplit {

/// Base class for all errors raised by this library.
class WebsplitError : public std::runtime_error {
 public:
  explicit WebsplitError(const std::string& what) : std::runtime_error(what) {}
};

/// A raw triple line could not be parsed.
class MalformedTriple : public WebsplitError {
 public:
  MalformedTriple(std::string line, std::string reason)
      : WebsplitError("malformed triple \"" + line + "\": " + reason),
        line_(std::move(line)),
        reason_(std::move(reason)) {}
  const std::string& line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string line_;
  std::string reason_;
};

/// A triple appeared in more than one block of a would-be disjoint union.
class OverlapError : public WebsplitError {
 public:
  explicit OverlapError(std::string triple)
      : WebsplitError("triple appears in more than one block: " + triple),
        triple_(std::move(triple)) {}
  const std::string& triple() const { return triple_; }

 private:
  std::string triple_;
};

/// Partition enumeration was asked for more elements than the guard allows.
class TooLarge : public WebsplitError {
 public:
  explicit TooLarge(std::size_t size, std::size_t limit)
      : WebsplitError("cannot enumerate partitions of " + std::to_string(size) +
                      " triples (limit " + std::to_string(limit) + ")") {}
};

/// A partition's blocks do not reconstruct the meaning representation.
class InvalidPartition : public WebsplitError {
 public:
  explicit InvalidPartition(const std::string& what) : WebsplitError(what) {}
};

/// A segmentation override does not reproduce the text it replaces.
class InvalidOverride : public WebsplitError {
 public:
  explicit InvalidOverride(const std::string& what) : WebsplitError(what) {}
};

/// Evaluation input lacks an output for a test complex sentence.
class MissingOutput : public WebsplitError {
 public:
  explicit MissingOutput(std::string complex_sentence)
      : WebsplitError("no system output for complex sentence: " + complex_sentence),
        complex_sentence_(std::move(complex_sentence)) {}
  const std::string& complex_sentence() const { return complex_sentence_; }

 private:
  std::string complex_sentence_;
};

/// Filesystem-level failure (unreadable input, unwritable output).
class IoError : public WebsplitError {
 public:
  explicit IoError(const std::string& what) : WebsplitError(what) {}
};

}  // namespace websplit
