namespace cdyn { namespace { int placeholder_chessboard = 0; } }
