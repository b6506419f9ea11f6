namespace cdyn { namespace { int placeholder_fatou = 0; } }
