#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace expreg {

/// Interned token. Two symbols are equal iff they were interned from the same
/// string; ordering follows the names so that sorted output is deterministic.
class Symbol {
public:
    Symbol();
    explicit Symbol(std::string_view name);

    const std::string& name() const noexcept { return *name_; }
    const void* id() const noexcept { return name_; }

    friend bool operator==(Symbol a, Symbol b) noexcept { return a.name_ == b.name_; }
    friend std::strong_ordering operator<=>(Symbol a, Symbol b) noexcept {
        if (a.name_ == b.name_) return std::strong_ordering::equal;
        return a.name_->compare(*b.name_) < 0 ? std::strong_ordering::less
                                                : std::strong_ordering::greater;
    }

private:
    const std::string* name_;
};

Symbol begin_marker(); // ⊳
Symbol end_marker();   // ⊲
bool is_marker(Symbol s);

} // namespace expreg

template <>
struct std::hash<expreg::Symbol> {
    std::size_t operator()(expreg::Symbol s) const noexcept {
        return std::hash<const void*>{}(s.id());
    }
};
