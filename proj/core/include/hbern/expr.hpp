#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbern/jets.hpp"

// Parsed scalar functions of one or two variables with exact jets to
// third order. This is the single source of analytic derivatives for
// surfaces, frames and variations.

namespace hbern {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double t) const { return t > lo && t < hi; }
    double length() const { return hi - lo; }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, size_t offset)
        : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    size_t offset() const { return offset_; }

private:
    size_t offset_;
};

class DomainError : public std::runtime_error {
public:
    DomainError(const std::string& msg, const std::string& subexpr)
        : std::runtime_error(msg + " in '" + subexpr + "'"), subexpr_(subexpr) {}
    const std::string& subexpr() const { return subexpr_; }

private:
    std::string subexpr_;
};

namespace detail {
struct FnImpl {
    virtual ~FnImpl() = default;
    virtual int arity() const = 0;
    virtual Jet1 jet1(double t) const = 0;
    virtual Jet2 jet2(double u, double v) const = 0;
    virtual std::string print() const = 0;
};
}  // namespace detail

/// Immutable scalar function of one or two named variables.
class ScalarFn {
public:
    ScalarFn() = default;
    explicit ScalarFn(std::shared_ptr<const detail::FnImpl> impl) : impl_(std::move(impl)) {}

    bool valid() const { return impl_ != nullptr; }
    int arity() const { return impl_->arity(); }

    double operator()(double t) const { return jet(t).v; }
    double operator()(double u, double v) const { return jet(u, v).v; }

    /// Value and derivatives of an arity-1 function.
    Jet1 jet(double t) const { return impl_->jet1(t); }
    /// Value and partials of an arity-2 function.
    Jet2 jet(double u, double v) const { return impl_->jet2(u, v); }

    std::string print() const { return impl_->print(); }

private:
    std::shared_ptr<const detail::FnImpl> impl_;
};

/// Parse an expression over the given variable names (one or two).
ScalarFn parse(const std::string& src, const std::vector<std::string>& vars);

/// Closed-form generators with hand-coded jets, used as oracles for the
/// parser and as named surface families.
struct BuiltinFn {
    ScalarFn fn;
    Interval domain;  // natural t-interval of the family
};
BuiltinFn builtin_tan_tanh();
BuiltinFn builtin_affine(double alpha, double beta);
BuiltinFn builtin_cot_shift();
BuiltinFn builtin_square_pos();
/// Lookup by name: tan_tanh | affine(a,b) | cot_shift | square_pos.
BuiltinFn builtin(const std::string& name, const std::vector<double>& params = {});

/// Recentered arity-1 function t -> f(t0 + t). print() reports the inner
/// source; callers record t0 themselves.
ScalarFn shift_arg(const ScalarFn& f, double t0);

}  // namespace hbern
