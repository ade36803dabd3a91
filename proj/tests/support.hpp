#pragma once

#include <gtest/gtest.h>

#include <functional>
#include <initializer_list>
#include <vector>

#include "ghm/error.hpp"
#include "ghm/metric_space.hpp"

namespace ghm::test {

inline Scalar q(long n, long d = 1) { return Scalar::fraction(n, d); }

inline Matrix ints(std::initializer_list<std::initializer_list<long>> rows) {
    Matrix m;
    for (const auto& r : rows) {
        std::vector<Scalar> row;
        for (long v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    return m;
}

/// Runs f and returns the kind of the Error it throws.
inline ErrorKind kind_of(const std::function<void()>& f, std::vector<std::size_t>* indices = nullptr) {
    try {
        f();
    } catch (const Error& e) {
        if (indices) *indices = e.indices();
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::Internal;
}

}  // namespace ghm::test
