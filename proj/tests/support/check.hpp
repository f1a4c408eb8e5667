#pragma once

// Assertions for the test binaries.  Plain assert() vanishes under NDEBUG
// and the default build is optimized, so these stay armed unconditionally
// and abort with file:line on the first failure.

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>

namespace testsupport
{

template <typename T>
concept Streamable = requires(std::ostream& os, const T& value) { os << value; };

template <typename A, typename B>
[[noreturn]] void fail_eq(const char* file, int line, const char* expr_a, const char* expr_b,
                          const A& a, const B& b)
{
    std::ostringstream message;
    message << file << ":" << line << ": CHECK_EQ(" << expr_a << ", " << expr_b << ") failed";
    if constexpr (Streamable<A> && Streamable<B>)
    {
        message << "\n  left:  " << a << "\n  right: " << b;
    }
    std::fprintf(stderr, "%s\n", message.str().c_str());
    std::abort();
}

} // namespace testsupport

#define CHECK(cond)                                                                          \
    do                                                                                       \
    {                                                                                        \
        if (!(cond))                                                                         \
        {                                                                                    \
            std::fprintf(stderr, "%s:%d: CHECK failed: %s\n", __FILE__, __LINE__, #cond);    \
            std::abort();                                                                    \
        }                                                                                    \
    } while (0)

#define CHECK_EQ(a, b)                                                                       \
    do                                                                                       \
    {                                                                                        \
        const auto& check_eq_a = (a);                                                        \
        const auto& check_eq_b = (b);                                                        \
        if (!(check_eq_a == check_eq_b))                                                     \
        {                                                                                    \
            testsupport::fail_eq(__FILE__, __LINE__, #a, #b, check_eq_a, check_eq_b);        \
        }                                                                                    \
    } while (0)

// CHECK(expr throws E): evaluates expr and demands an E escape.
#define CHECK_THROWS(expr, exception_type)                                                   \
    do                                                                                       \
    {                                                                                        \
        bool check_threw = false;                                                            \
        try                                                                                  \
        {                                                                                    \
            (void)(expr);                                                                    \
        }                                                                                    \
        catch (const exception_type&)                                                        \
        {                                                                                    \
            check_threw = true;                                                              \
        }                                                                                    \
        if (!check_threw)                                                                    \
        {                                                                                    \
            std::fprintf(stderr, "%s:%d: expected %s from: %s\n", __FILE__, __LINE__,        \
                         #exception_type, #expr);                                            \
            std::abort();                                                                    \
        }                                                                                    \
    } while (0)
