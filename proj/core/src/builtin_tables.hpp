#pragma once

#include <optional>
#include <string_view>

namespace weighwright::detail {

std::optional<std::string_view> builtin_table_text(std::string_view name);

}  // namespace weighwright::detail
