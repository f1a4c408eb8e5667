#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace leasewire
{

// Minimal value-or-error carrier for domain outcomes that are not
// programming errors (those throw).  E is typically a small enum.
template <typename T, typename E>
class Expected
{
public:
    Expected(T value) : m_state(std::in_place_index<0>, std::move(value)) {}
    Expected(E error) : m_state(std::in_place_index<1>, std::move(error)) {}

    bool ok() const noexcept { return m_state.index() == 0; }
    explicit operator bool() const noexcept { return ok(); }

    const T& value() const
    {
        if (!ok())
        {
            throw std::logic_error("Expected: value() on error state");
        }
        return std::get<0>(m_state);
    }

    T& value()
    {
        if (!ok())
        {
            throw std::logic_error("Expected: value() on error state");
        }
        return std::get<0>(m_state);
    }

    const E& error() const
    {
        if (ok())
        {
            throw std::logic_error("Expected: error() on value state");
        }
        return std::get<1>(m_state);
    }

    const T& operator*() const { return value(); }
    const T* operator->() const { return &value(); }

private:
    std::variant<T, E> m_state;
};

template <typename E>
class Expected<void, E>
{
public:
    Expected() = default;
    Expected(E error) : m_error(std::move(error)), m_has_error(true) {}

    bool ok() const noexcept { return !m_has_error; }
    explicit operator bool() const noexcept { return ok(); }

    const E& error() const
    {
        if (ok())
        {
            throw std::logic_error("Expected: error() on value state");
        }
        return m_error;
    }

private:
    E m_error{};
    bool m_has_error = false;
};

} // namespace leasewire
