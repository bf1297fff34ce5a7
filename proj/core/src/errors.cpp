#include "weighwright/errors.hpp"

namespace weighwright {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

PrefixError::PrefixError(const std::string& what, Path prefix)
    : Error(what + " at " + path_to_string(prefix)), prefix_(std::move(prefix)) {}

MissingWeighing::MissingWeighing(Path prefix) : PrefixError("missing weighing", std::move(prefix)) {}

IrreparableNode::IrreparableNode(Path prefix)
    : PrefixError("no subtree within the depth budget", std::move(prefix)) {}

}  // namespace weighwright
