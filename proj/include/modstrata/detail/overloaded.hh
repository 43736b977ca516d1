#pragma once

namespace modstrata::detail
{
    template <typename... Ts_>
    struct Overloaded : Ts_... { using Ts_::operator()...; };
}
