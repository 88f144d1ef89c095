#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sphereiso {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A word refers to a symbol the group model does not declare.
struct UnknownGenerator : Error {
  using Error::Error;
};

/// Two values from different group models were combined.
struct ModelMismatch : Error {
  using Error::Error;
};

/// A finite enumeration (order, element list) was requested of an
/// infinite group.
struct InfiniteGroup : Error {
  using Error::Error;
};

/// Malformed wire data: JSON of the wrong shape, out-of-range values,
/// words that fail to parse. Carries a dotted path into the offending
/// document when one is known.
struct SchemaError : Error {
  explicit SchemaError(const std::string& message, std::string path = "")
      : Error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// The group kind named in a scenario is recognized by the wire format but
/// not implemented here.
struct UnsupportedGroupKind : Error {
  using Error::Error;
};

/// Closure mode "all" was requested over a group with no finite enumeration.
struct ClosureUnresolvable : Error {
  using Error::Error;
};

/// Vector/matrix sizes do not line up.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A decision that only makes sense for based tracks was asked of a track
/// whose core is not the identity.
struct NotBased : Error {
  using Error::Error;
};

/// A stabilizer table assigns translations that violate the cocycle rule
/// beyond the declared indeterminacy. Carries a printable witness.
struct InconsistentCocycle : Error {
  InconsistentCocycle(const std::string& message, std::string witness)
      : Error(message + " [witness: " + witness + "]"),
        witness_(std::move(witness)) {}

  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

/// One finding from a validation pass: where it was found and what is wrong.
struct ValidationIssue {
  std::string where;
  std::string message;
};

}  // namespace sphereiso
