#pragma once

#include <string>
#include <vector>

namespace facloc::io {

/// Minimal standalone SVG line plot: axes, ticks, polylines, optional
/// log10 scaling per axis.
struct LinePlot {
    struct Series {
        std::string label;
        std::string color = "#1f6fb2";
        std::vector<double> x, y;
    };

    std::string title;
    std::string x_label, y_label;
    bool log_x = false, log_y = false;
    int width = 720, height = 480;
    std::vector<Series> series;

    void add_series(std::string label, std::vector<double> x, std::vector<double> y,
                    std::string color = "#1f6fb2");
    void write(const std::string& path) const;
};

}  // namespace facloc::io
