#pragma once

#include <stdexcept>
#include <string>

namespace torvol {

enum class ErrorKind {
	invalid_representation,
	malformed_word,
	out_of_scope,
	numeric_input,
	not_in_image,
	ill_conditioned_basis,
	shape,
	symmetry,
	sampling_failure,
	solver_failure,
	condition_c_undefined,
	tolerance_failure,
	not_a_cocycle,
	degenerate_basis,
	not_exact,
	cup_formula,
	snake_construction,
	decomposition_inconsistency,
	basis_completion,
	io,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
	Error(ErrorKind kind, const std::string& what)
		: std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
	{
	}

	ErrorKind kind() const noexcept { return kind_; }

private:
	ErrorKind kind_;
};

} // namespace torvol
