namespace cdyn { namespace { int placeholder_strips = 0; } }
