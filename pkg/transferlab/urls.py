"""
URL configuration for transferlab project.

Only the admin is served: fixtures and recorded comparisons are browsed
there, everything else runs through the `ga` command.
"""
from django.contrib import admin
from django.urls import path

urlpatterns = [
    path('admin/', admin.site.urls),
]
