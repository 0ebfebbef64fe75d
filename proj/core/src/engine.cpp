namespace chesslab {}
