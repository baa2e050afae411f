#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sdc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed document or out-of-range input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Division by zero in an exact field.
class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// A computation would exceed its configured size or element budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t partial = 0)
        : Error(what), partial_(partial) {}

    /// Work completed before the budget was hit (e.g. group elements found).
    [[nodiscard]] std::uint64_t partial() const noexcept { return partial_; }

private:
    std::uint64_t partial_;
};

/// Group closure reached its element cap.
class CapExceeded : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

/// Inputs are outside the sizes a brute-force routine supports.
class Infeasible : public Error {
public:
    using Error::Error;
};

/// A form ring failed one of its structural checks.
class ValidationError : public Error {
public:
    ValidationError(std::string axiom, const std::string& witness)
        : Error(axiom + ": " + witness), axiom_(std::move(axiom)) {}

    /// Short name of the violated axiom, e.g. "mul-associativity".
    [[nodiscard]] const std::string& axiom() const noexcept { return axiom_; }

private:
    std::string axiom_;
};

/// Variable collapse under which a generator has no induced action.
class IllegalSymmetrization : public Error {
public:
    IllegalSymmetrization(std::size_t generator, std::string label,
                          std::size_t row_block, std::size_t column_block)
        : Error("illegal symmetrization: generator M" + std::to_string(generator + 1) + " (" + label +
                ") is not constant on block " + std::to_string(column_block) +
                " when summed into block " + std::to_string(row_block)),
          generator_(generator),
          label_(std::move(label)),
          row_block_(row_block),
          column_block_(column_block) {}

    /// Zero-based position in the generator list; the message numbers from M1.
    [[nodiscard]] std::size_t generator() const noexcept { return generator_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] std::size_t row_block() const noexcept { return row_block_; }
    [[nodiscard]] std::size_t column_block() const noexcept { return column_block_; }

private:
    std::size_t generator_;
    std::string label_;
    std::size_t row_block_;
    std::size_t column_block_;
};

/// A polynomial is not in the ring generated by a Gleason basis.
class NoRepresentation : public Error {
public:
    using Error::Error;
};

}  // namespace sdc
