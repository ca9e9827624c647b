import logging

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from api.routers import analysis
from remez_lab import __version__
from remez_lab.config import configure_logging
from remez_lab.exceptions import RemezLabError

configure_logging()
logger = logging.getLogger(__name__)

app = FastAPI(title="Remez Lab API", version=__version__)

# Include routers
app.include_router(analysis.router, prefix="/api/v1")


@app.exception_handler(RemezLabError)
async def remez_lab_error_handler(request: Request, exc: RemezLabError):
    logger.info("Rejected %s %s: %s", request.method, request.url.path, exc)
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.get("/")
async def root():
    return {"message": "Welcome to the Remez Lab API"}


@app.get("/health")
async def health_check():
    return {"status": "healthy", "version": __version__}
