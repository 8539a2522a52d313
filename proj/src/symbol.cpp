#include "expreg/symbol.hpp"

#include <mutex>
#include <unordered_set>

namespace expreg {
namespace {

const std::string* intern(std::string_view name) {
    static std::mutex mutex;
    static std::unordered_set<std::string> pool;
    std::lock_guard lock(mutex);
    return &*pool.emplace(name).first;
}

} // namespace

Symbol::Symbol() : name_(intern("")) {}
Symbol::Symbol(std::string_view name) : name_(intern(name)) {}

Symbol begin_marker() {
    static const Symbol s{"⊳"};
    return s;
}

Symbol end_marker() {
    static const Symbol s{"⊲"};
    return s;
}

bool is_marker(Symbol s) { return s == begin_marker() || s == end_marker(); }

} // namespace expreg
