namespace cdyn { namespace { int placeholder_render = 0; } }
