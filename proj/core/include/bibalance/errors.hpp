#pragma once

#include <stdexcept>
#include <string>

namespace bibalance {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A decisive-only component received a bet strictly inside (0,1).
class DecisiveDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A value pair or odds point that no bi-balanced tree can realize.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration or exact-mode size guard exceeded.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A strategy broke the game protocol. Rounds are 1-based.
class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(int round, const std::string& what)
      : std::runtime_error("round " + std::to_string(round) + ": " + what),
        round_(round) {}

  int round() const noexcept { return round_; }

 private:
  int round_;
};

// The gambler side ended the game early (e.g. EOF in interactive play).
class GameAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bibalance
