/*
 * Copyright (C) 2026 safehri contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "safehri/types.hpp"

namespace safehri::sim {

/// Known affine workspace<->image map standing in for hand-eye
/// calibration: px = scale * meters + offset.
struct CameraMap {
    double scale = 100.0; ///< px per meter, > 0
    Vec2 offset = {320.0, 240.0};

    Vec2 project(Vec2 ws) const {
        return {scale * ws.x + offset.x, scale * ws.y + offset.y};
    }
    Vec2 unproject(Vec2 px) const {
        return {(px.x - offset.x) / scale, (px.y - offset.y) / scale};
    }
};

} // namespace safehri::sim
