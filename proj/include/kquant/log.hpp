#pragma once

#include <functional>
#include <iostream>
#include <string>

namespace kquant::log {

enum class Level { info, warning };

using Sink = std::function<void(Level, const std::string&)>;

inline Sink& sink() {
    static Sink s = [](Level level, const std::string& msg) {
        if (level == Level::warning) std::cerr << "warning: " << msg << "\n";
    };
    return s;
}

inline void set_sink(Sink s) { sink() = std::move(s); }
inline void info(const std::string& msg) { sink()(Level::info, msg); }
inline void warn(const std::string& msg) { sink()(Level::warning, msg); }

}  // namespace kquant::log
